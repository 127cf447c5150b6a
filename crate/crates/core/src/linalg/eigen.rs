use super::{c, ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Off-diagonal magnitude below which the Jacobi iteration stops.
const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues below this are clipped to zero by [`sqrtm_psd`]; anything
/// more negative is an error.
pub const PSD_CLIP_TOL: f64 = 1e-10;

/// Spectral decomposition of a Hermitian matrix.
///
/// `values` are non-decreasing and `vectors[i]` is the unit eigenvector paired
/// with `values[i]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

impl HermitianEigen {
    /// `sum_i f(values_i) v_i v_i^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = vec![ZERO; n * n];
        for (&lambda, v) in self.values.iter().zip(&self.vectors) {
            let w = f(lambda);
            if w == ZERO {
                continue;
            }
            for i in 0..n {
                let wi = w * v[i];
                for j in 0..n {
                    out[i * n + j] += wi * v[j].conj();
                }
            }
        }
        ComplexMatrix::from_raw(n, out)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| c(x, 0.0))
    }

    /// Matrix whose columns are the eigenvectors.
    pub fn vector_matrix(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = vec![ZERO; n * n];
        for (k, v) in self.vectors.iter().enumerate() {
            for i in 0..n {
                out[i * n + k] = v[i];
            }
        }
        ComplexMatrix::from_raw(n, out)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary and then applies the real plane rotation that annihilates it.
/// Output is deterministic: identical input gives bit-identical output.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    h.check_hermitian()?;
    let n = h.dim();

    // Work on the exactly Hermitian part so that only one triangle matters.
    let mut a = vec![ZERO; n * n];
    for i in 0..n {
        a[i * n + i] = c(h.get(i, i).re, 0.0);
        for j in i + 1..n {
            let upper = (h.get(i, j) + h.get(j, i).conj()) * 0.5;
            a[i * n + j] = upper;
            a[j * n + i] = upper.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n).as_slice().to_vec();

    let off_diagonal = |a: &[C64]| {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max(a[i * n + j].norm());
            }
        }
        worst
    };

    let mut converged = off_diagonal(&a) < OFF_DIAGONAL_TOL;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal(&a) < OFF_DIAGONAL_TOL;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort: ties keep the Jacobi output order.
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));

    let values = order.iter().map(|&k| a[k * n + k].re).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi step on the (p, q) plane: `a <- J^dagger a J`, `v <- v J`.
fn rotate(a: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let phase = (g / mag).conj();

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    // J restricted to the (p, q) block.
    let j_pp = c(cs, 0.0);
    let j_pq = c(sn, 0.0);
    let j_qp = phase * (-sn);
    let j_qq = phase * cs;

    // a <- a J (columns p, q)
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * j_pp + akq * j_qp;
        a[k * n + q] = akp * j_pq + akq * j_qq;
    }
    // a <- J^dagger a (rows p, q)
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[q * n + k] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = c(a[p * n + p].re, 0.0);
    a[q * n + q] = c(a[q * n + q].re, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * j_pp + vkq * j_qp;
        v[k * n + q] = vkp * j_pq + vkq * j_qq;
    }
}

/// `exp(i * s * h)` for Hermitian `h`, through its spectral decomposition.
pub fn expm_i_hermitian(h: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.map_spectrum(|lambda| C64::from_polar(1.0, s * lambda)))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn sqrtm_psd(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(rho)?;
    if let Some(&lowest) = eig.values.first() {
        if lowest < -PSD_CLIP_TOL {
            return Err(Error::NegativeEigenvalue { value: lowest });
        }
    }
    Ok(eig.map_spectrum(|lambda| c(lambda.max(0.0).sqrt(), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, pauli};
    use proptest::prelude::*;

    fn hermitian_from(n: usize, raw: &[f64]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, c(raw[i * n + i], 0.0)).unwrap();
            for j in i + 1..n {
                let z = c(raw[i * n + j], raw[j * n + i]);
                m.set(i, j, z).unwrap();
                m.set(j, i, z.conj()).unwrap();
            }
        }
        m
    }

    fn general_from(n: usize, raw: &[f64]) -> ComplexMatrix {
        ComplexMatrix::new(
            n,
            (0..n * n).map(|k| c(raw[2 * k], raw[2 * k + 1])).collect(),
        )
        .unwrap()
    }

    fn hermitian_strategy() -> impl Strategy<Value = ComplexMatrix> {
        (1usize..=8).prop_flat_map(|n| {
            prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |raw| hermitian_from(n, &raw))
        })
    }

    fn orthonormality_defect(eig: &HermitianEigen) -> f64 {
        let v = eig.vector_matrix();
        (&v.adjoint() * &v).max_abs_diff(&ComplexMatrix::identity(v.dim()))
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let eig = hermitian_eig(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(eig.values, vec![1.0; 4]);
    }

    #[test]
    fn sigma_z_spectrum() {
        let eig = hermitian_eig(&pauli::z()).unwrap();
        assert_eq!(eig.values, vec![-1.0, 1.0]);
        assert_eq!(eig.vectors[0], vec![ZERO, c(1.0, 0.0)]);
    }

    #[test]
    fn sigma_y_needs_a_complex_rotation() {
        let eig = hermitian_eig(&pauli::y()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        assert!(eig.reconstruct().max_abs_diff(&pauli::y()) < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn tolerates_tiny_hermiticity_noise() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 1e-12)],
            vec![c(0.5, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        assert!(hermitian_eig(&m).is_ok());
    }

    #[test]
    fn dephasing_w_spectrum() {
        // W(lt, theta) = 1/2 [[1, cos lt - i sin lt cos th], [c.c., 1]]
        let (lt, th) = (0.9_f64, 1.1_f64);
        let off = c(lt.cos(), -lt.sin() * th.cos()) * 0.5;
        let w = ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), off], vec![off.conj(), c(0.5, 0.0)]])
            .unwrap();
        let r = (lt.cos().powi(2) + th.cos().powi(2) * lt.sin().powi(2)).sqrt();
        let eig = hermitian_eig(&w).unwrap();
        assert!((eig.values[0] - 0.5 * (1.0 - r)).abs() < 1e-14);
        assert!((eig.values[1] - 0.5 * (1.0 + r)).abs() < 1e-14);
    }

    #[test]
    fn degenerate_eight_dim_spectrum() {
        // Z (x) Z (x) 1 has two four-fold degenerate eigenvalues.
        let zz = kron(&kron(&pauli::z(), &pauli::z()), &pauli::identity());
        let u = expm_i_hermitian(&kron(&kron(&pauli::x(), &pauli::y()), &pauli::z()), 0.3).unwrap();
        let h = zz.conjugate_by(&u).unwrap();
        let eig = hermitian_eig(&h).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&h) < 1e-12);
        assert!(orthonormality_defect(&eig) < 1e-12);
        for (k, &x) in eig.values.iter().enumerate() {
            let expected = if k < 4 { -1.0 } else { 1.0 };
            assert!((x - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn expm_at_zero_is_identity() {
        let h = kron(&pauli::x(), &pauli::y());
        assert!(
            expm_i_hermitian(&h, 0.0)
                .unwrap()
                .max_abs_diff(&ComplexMatrix::identity(4))
                < 1e-14
        );
    }

    #[test]
    fn expm_of_half_sigma_z() {
        let lt = 1.3_f64;
        let u = expm_i_hermitian(&pauli::z().scale_real(0.5), -lt).unwrap();
        let expected = ComplexMatrix::from_diag(&[
            C64::from_polar(1.0, -lt / 2.0),
            C64::from_polar(1.0, lt / 2.0),
        ])
        .unwrap();
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn sqrtm_examples() {
        let i4 = ComplexMatrix::identity(4);
        assert!(sqrtm_psd(&i4).unwrap().max_abs_diff(&i4) < 1e-15);
        let d = ComplexMatrix::from_real_diag(&[4.0, 1.0]).unwrap();
        let expected = ComplexMatrix::from_real_diag(&[2.0, 1.0]).unwrap();
        assert!(sqrtm_psd(&d).unwrap().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn sqrtm_clips_float_noise_and_rejects_real_negatives() {
        let noisy = ComplexMatrix::from_real_diag(&[1.0, -5e-11]).unwrap();
        let root = sqrtm_psd(&noisy).unwrap();
        assert_eq!(root.get(1, 1), ZERO);
        let bad = ComplexMatrix::from_real_diag(&[1.0, -1e-6]).unwrap();
        assert!(matches!(
            sqrtm_psd(&bad),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn eigendecomposition_is_deterministic() {
        let raw: Vec<f64> = (0..36)
            .map(|k| ((k * 37 % 11) as f64 - 5.0) / 7.0)
            .collect();
        let h = hermitian_from(6, &raw);
        let a = hermitian_eig(&h).unwrap();
        let b = hermitian_eig(&h).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    proptest! {
        #[test]
        fn reconstruction_and_orthonormality(h in hermitian_strategy()) {
            let eig = hermitian_eig(&h).unwrap();
            prop_assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-12);
            prop_assert!(orthonormality_defect(&eig) <= 1e-12);
            prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn expm_is_unitary(h in hermitian_strategy(), s in -5.0f64..5.0) {
            let u = expm_i_hermitian(&h, s).unwrap();
            prop_assert!(u.unitarity_defect() <= 1e-12);
        }

        #[test]
        fn expm_group_law(h in hermitian_strategy(), s1 in -3.0f64..3.0, s2 in -3.0f64..3.0) {
            let lhs = &expm_i_hermitian(&h, s1).unwrap() * &expm_i_hermitian(&h, s2).unwrap();
            let rhs = expm_i_hermitian(&h, s1 + s2).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-11);
        }

        #[test]
        fn sqrtm_squares_back(
            (n, raw) in (1usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(-1.0f64..1.0, 2 * n * n)))
        ) {
            let g = general_from(n, &raw);
            let rho = &g * &g.adjoint();
            let root = sqrtm_psd(&rho).unwrap();
            prop_assert!(root.is_hermitian(1e-12));
            prop_assert!((&root * &root).max_abs_diff(&rho) <= 1e-10);
        }

        #[test]
        fn adjoint_reverses_products(
            (n, ra, rb) in (1usize..=6).prop_flat_map(|n| (
                Just(n),
                prop::collection::vec(-1.0f64..1.0, 2 * n * n),
                prop::collection::vec(-1.0f64..1.0, 2 * n * n),
            ))
        ) {
            let a = general_from(n, &ra);
            let b = general_from(n, &rb);
            let lhs = (&a * &b).adjoint();
            let rhs = &b.adjoint() * &a.adjoint();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-14);
        }
    }
}
