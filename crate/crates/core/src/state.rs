//! Validated pure and mixed states, entropies and the Wootters concurrence.

use crate::error::{Error, Result};
use crate::linalg::{
    self, c, hermitian_eig, kron, pauli, ComplexMatrix, HermitianEigen, C64, HERMITIAN_TOL,
};

/// Tolerance on the norm of a pure state.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance on trace and eigenvalue positivity of a density matrix.
pub const DENSITY_TOL: f64 = 1e-10;
/// Eigenvalues below this contribute nothing to the von Neumann entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

/// Normalized state vector on a tensor product of subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        linalg::tensor_check_dims(&dims, amplitudes.len())?;
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "state norm is {norm}, expected 1"
            )));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm; fails on the zero vector.
    pub fn normalized(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::InvalidState(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        Self::new(dims, amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis vector `|index>`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let n: usize = dims.iter().product();
        if index >= n {
            return Err(Error::InvalidState(format!(
                "basis index {index} >= dimension {n}"
            )));
        }
        let mut amps = vec![c(0.0, 0.0); n];
        amps[index] = c(1.0, 0.0);
        Self::new(dims, amps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Tensor product `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            dims,
            amplitudes: linalg::kron_vec(&self.amplitudes, &other.amplitudes),
        }
    }

    /// Reorders subsystems so that new subsystem `k` is old subsystem `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let amplitudes = linalg::permute_vector(&self.amplitudes, &self.dims, perm)?;
        Ok(Self {
            dims: perm.iter().map(|&k| self.dims[k]).collect(),
            amplitudes,
        })
    }

    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dims != other.dims {
            return Err(Error::InvalidSubsystems(format!(
                "inner product of states on {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Hermitian, unit-trace, positive semidefinite operator with a subsystem layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        linalg::tensor_check_dims(&dims, mat.dim())?;
        let deviation = mat.hermiticity_defect();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace is {trace}, expected 1")));
        }
        let lowest = hermitian_eig(&mat)?.values[0];
        if lowest < -DENSITY_TOL {
            return Err(Error::NegativeEigenvalue { value: lowest });
        }
        Ok(Self { dims, mat })
    }

    /// Single-subsystem state.
    pub fn from_matrix(mat: ComplexMatrix) -> Result<Self> {
        let d = mat.dim();
        Self::new(vec![d], mat)
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        Self {
            dims,
            mat: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        hermitian_eig(&self.mat)
    }

    /// Eigenvalues in non-decreasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eig(&self.mat)
            .expect("density matrices are Hermitian by construction")
            .values
    }

    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            dims,
            mat: kron(&self.mat, &other.mat),
        }
    }

    /// Reduced state on the subsystems listed in `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let mat = linalg::partial_trace(&self.mat, &self.dims, keep)?;
        Ok(Self {
            dims: keep.iter().map(|&k| self.dims[k]).collect(),
            mat,
        })
    }

    /// Reorders subsystems so that new subsystem `k` is old subsystem `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let mat = linalg::permute_subsystems(&self.mat, &self.dims, perm)?;
        Ok(Self {
            dims: perm.iter().map(|&k| self.dims[k]).collect(),
            mat,
        })
    }

    /// `u rho u^dagger` for a unitary on the full space.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.dims.clone(), self.mat.conjugate_by(u)?)
    }
}

/// `e^{-i phi/2} cos(theta/2)|+z,-z> + e^{+i phi/2} sin(theta/2)|-z,+z>` on two qubits.
///
/// `|+z>` is basis index 0, so the two amplitudes sit at positions 1 and 2.
pub fn schmidt_state(theta: f64, phi: f64) -> Result<PureState> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
        });
    }
    if !phi.is_finite() {
        return Err(Error::OutOfRange {
            name: "phi",
            value: phi,
        });
    }
    let zero = c(0.0, 0.0);
    let a = C64::from_polar((theta / 2.0).cos(), -phi / 2.0);
    let b = C64::from_polar((theta / 2.0).sin(), phi / 2.0);
    PureState::new(vec![2, 2], vec![zero, a, b, zero])
}

pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    let amps = psi.amplitudes();
    DensityMatrix {
        dims: psi.dims().to_vec(),
        mat: ComplexMatrix::outer(amps, amps).expect("same vector on both sides"),
    }
}

fn entropy_of_spectrum(values: &[f64]) -> f64 {
    let s: f64 = values
        .iter()
        .filter(|&&x| x >= ENTROPY_CUTOFF)
        .map(|&x| -x * x.log2())
        .sum();
    s.max(0.0)
}

/// `-Tr rho log2 rho`, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// `h(x) = -x log2 x - (1 - x) log2 (1 - x)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
        });
    }
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// Eigenvalues of `rho` below this are treated as rounding noise when
/// factoring the state for the concurrence.
pub const RANK_CUTOFF: f64 = 1e-13;

/// Wootters concurrence of a two-qubit state.
///
/// The square roots of the eigenvalues of `rho rho~`, with
/// `rho~ = (Y (x) Y) rho* (Y (x) Y)`, are the singular values of the symmetric
/// matrix `tau = X^T (Y (x) Y) X` for any factor `rho = X X^dagger`. Taking `X`
/// from the spectrum of `rho` keeps the small roots exact for near-pure states,
/// where `sqrt(rho) rho~ sqrt(rho)` would amplify rounding to `1e-8`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::InvalidSubsystems(format!(
            "concurrence needs a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    let spectrum = rho.eigen()?;
    let yy = kron(&pauli::y(), &pauli::y());
    // columns of X: sqrt(lambda_k) v_k for the retained eigenpairs
    let cols: Vec<Vec<C64>> = spectrum
        .values
        .iter()
        .zip(&spectrum.vectors)
        .filter(|(&l, _)| l > RANK_CUTOFF)
        .map(|(&l, v)| v.iter().map(|z| z * l.sqrt()).collect())
        .collect();
    let flipped: Vec<Vec<C64>> = cols.iter().map(|x| yy.apply(x)).collect::<Result<_>>()?;
    let r = cols.len();
    if r == 0 {
        return Ok(0.0);
    }
    let mut tau = ComplexMatrix::zeros(r);
    for (i, x) in cols.iter().enumerate() {
        for (j, y) in flipped.iter().enumerate() {
            tau.set(i, j, x.iter().zip(y).map(|(a, b)| a * b).sum())?;
        }
    }
    let gram = &tau * &tau.adjoint();
    let mut roots: Vec<f64> = hermitian_eig(&gram)?
        .values
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .collect();
    roots.resize(4, 0.0);
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// `<psi| rho |psi>`.
pub fn state_fidelity(psi: &PureState, rho: &DensityMatrix) -> Result<f64> {
    if psi.dims() != rho.dims() {
        return Err(Error::InvalidSubsystems(format!(
            "state on {:?} vs density matrix on {:?}",
            psi.dims(),
            rho.dims()
        )));
    }
    let amps = psi.amplitudes();
    let image = rho.matrix().apply(amps)?;
    let overlap: C64 = amps.iter().zip(&image).map(|(a, b)| a.conj() * b).sum();
    if overlap.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidState(format!(
            "fidelity has imaginary part {:e}",
            overlap.im
        )));
    }
    Ok(overlap.re)
}
