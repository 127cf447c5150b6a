//! Quantum operations in operator-sum form and the information measures built
//! on them: entropy exchange, coherent information, modified entanglement
//! fidelity and the quantum Fano bound.
//!
//! Bipartite inputs are ordered `(R, Q)`: the reference `R` is the most
//! significant factor and the channel acts on `Q`.

mod mef;

pub use mef::{maximize_fidelity, su2_rotation, MefSolution, MEF_GRID_POINTS, MEF_STEP_TOL};

use crate::error::{Error, Result};
use crate::linalg::{embed, hermitian_eig, ComplexMatrix, C64};
use crate::state::{
    binary_entropy, density_from_pure, von_neumann_entropy, DensityMatrix, PureState,
};

/// Max-abs tolerance on `sum_j E_j^dagger E_j - 1`.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Allowed disagreement between `S(rho_RQ')` and `S(W)`.
pub const ROUTE_TOL: f64 = 1e-9;
/// Unitarity tolerance for dilations.
pub const UNITARY_TOL: f64 = 1e-10;

/// Kraus operators below this max-abs size are dropped by
/// [`kraus_from_dilation`].
const NEGLIGIBLE_KRAUS: f64 = 1e-14;

/// A trace-preserving map `rho -> sum_j E_j rho E_j^dagger`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = ops
            .first()
            .ok_or_else(|| {
                Error::InvalidState("a channel needs at least one Kraus operator".into())
            })?
            .dim();
        if let Some(bad) = ops.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let mut sum = ComplexMatrix::zeros(dim);
        for e in &ops {
            sum = &sum + &(&e.adjoint() * e);
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > COMPLETENESS_TOL {
            return Err(Error::IncompleteKraus { deviation });
        }
        Ok(Self { dim, ops })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            ops: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Single-operator channel; `u` must be unitary.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Max-abs entry of `sum_j E_j^dagger E_j - 1`.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim);
        for e in &self.ops {
            sum = &sum + &(&e.adjoint() * e);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// Equivalent Kraus set `F_k = sum_j mixing[k][j] E_j` for a unitary
    /// `mixing` of size `len() x len()`. Describes the same channel.
    pub fn rotated(&self, mixing: &ComplexMatrix) -> Result<Self> {
        if mixing.dim() != self.ops.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ops.len(),
                found: mixing.dim(),
            });
        }
        let deviation = mixing.unitarity_defect();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        let ops = (0..self.ops.len())
            .map(|k| {
                self.ops
                    .iter()
                    .enumerate()
                    .fold(ComplexMatrix::zeros(self.dim), |acc, (j, e)| {
                        &acc + &e.scale(mixing.get(k, j))
                    })
            })
            .collect();
        Self::new(ops)
    }
}

/// `sum_j E_j rho E_j^dagger`.
pub fn apply(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != ch.dim {
        return Err(Error::DimensionMismatch {
            expected: ch.dim,
            found: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(ch.dim);
    for e in &ch.ops {
        out = &out + &rho.matrix().conjugate_by(e)?;
    }
    DensityMatrix::new(rho.dims().to_vec(), out)
}

fn check_bipartite(ch: &KrausChannel, rho_rq: &DensityMatrix) -> Result<()> {
    match rho_rq.dims() {
        [_, dq] if *dq == ch.dim => Ok(()),
        [_, dq] => Err(Error::DimensionMismatch {
            expected: ch.dim,
            found: *dq,
        }),
        dims => Err(Error::InvalidSubsystems(format!(
            "expected an (R, Q) state, got dims {dims:?}"
        ))),
    }
}

/// `sum_j (1 (x) E_j) rho_RQ (1 (x) E_j)^dagger`.
pub fn apply_extended(ch: &KrausChannel, rho_rq: &DensityMatrix) -> Result<DensityMatrix> {
    check_bipartite(ch, rho_rq)?;
    let dims = rho_rq.dims();
    let mut out = ComplexMatrix::zeros(rho_rq.dim());
    for e in &ch.ops {
        let lifted = embed(e, dims, &[1])?;
        out = &out + &rho_rq.matrix().conjugate_by(&lifted)?;
    }
    DensityMatrix::new(dims.to_vec(), out)
}

/// Kraus operators of `rho -> Tr_E[U (rho (x) rho_env) U^dagger]`.
///
/// `u` acts on `(Q, E)` with `Q` most significant. With `rho_env =
/// sum_i p_i |i><i|`, the operators are `E_ij = sqrt(p_i) <j|U|i>` with `|j>`
/// running over the computational basis of `E`, ordered `i`-major. Operators
/// that vanish identically are dropped.
pub fn kraus_from_dilation(u: &ComplexMatrix, rho_env: &DensityMatrix) -> Result<KrausChannel> {
    let de = rho_env.dim();
    if !u.dim().is_multiple_of(de) {
        return Err(Error::DimensionMismatch {
            expected: de,
            found: u.dim(),
        });
    }
    let deviation = u.unitarity_defect();
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let dq = u.dim() / de;
    let env = hermitian_eig(rho_env.matrix())?;

    let mut ops = Vec::with_capacity(de * de);
    for (&p, env_vec) in env.values.iter().zip(&env.vectors) {
        if p <= 0.0 {
            continue;
        }
        let weight = p.sqrt();
        for j in 0..de {
            let mut e = ComplexMatrix::zeros(dq);
            for qo in 0..dq {
                for qi in 0..dq {
                    let amp: C64 = (0..de)
                        .map(|k| u.get(qo * de + j, qi * de + k) * env_vec[k])
                        .sum();
                    e.set(qo, qi, amp * weight)?;
                }
            }
            if e.max_abs() > NEGLIGIBLE_KRAUS {
                ops.push(e);
            }
        }
    }
    KrausChannel::new(ops)
}

/// `W_ij = Tr(E_i rho E_j^dagger)`, a density matrix on the Kraus index space.
pub fn w_matrix(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != ch.dim {
        return Err(Error::DimensionMismatch {
            expected: ch.dim,
            found: rho.dim(),
        });
    }
    let k = ch.ops.len();
    let left: Vec<ComplexMatrix> = ch.ops.iter().map(|e| e * rho.matrix()).collect();
    let mut w = ComplexMatrix::zeros(k);
    for (i, a) in left.iter().enumerate() {
        for (j, e) in ch.ops.iter().enumerate() {
            // Tr(A E^dagger) = sum_ab A_ab conj(E_ab)
            let value: C64 = a
                .as_slice()
                .iter()
                .zip(e.as_slice())
                .map(|(x, y)| x * y.conj())
                .sum();
            w.set(i, j, value)?;
        }
    }
    DensityMatrix::new(vec![k], w)
}

/// Entropy exchange evaluated both ways, plus the channel output it came from.
#[derive(Debug, Clone)]
pub struct EntropyExchange {
    /// `rho_RQ'`.
    pub output: DensityMatrix,
    /// `S(rho_RQ')`.
    pub extrinsic: f64,
    /// `S(W)` with `W` built from `Tr_R rho_RQ`.
    pub intrinsic: f64,
}

/// Computes `S(rho_RQ')` and `S(W)` and fails if they differ by more than
/// [`ROUTE_TOL`].
pub fn entropy_exchange_routes(
    ch: &KrausChannel,
    rho_rq: &DensityMatrix,
) -> Result<EntropyExchange> {
    let output = apply_extended(ch, rho_rq)?;
    let extrinsic = von_neumann_entropy(&output);
    let w = w_matrix(ch, &rho_rq.partial_trace(&[1])?)?;
    let intrinsic = von_neumann_entropy(&w);
    if (extrinsic - intrinsic).abs() > ROUTE_TOL {
        return Err(Error::RouteDisagreement {
            extrinsic,
            intrinsic,
        });
    }
    Ok(EntropyExchange {
        output,
        extrinsic,
        intrinsic,
    })
}

/// `S_e = S(rho_RQ')` in bits, cross-checked against `S(W)`.
pub fn entropy_exchange(ch: &KrausChannel, rho_rq: &DensityMatrix) -> Result<f64> {
    Ok(entropy_exchange_routes(ch, rho_rq)?.extrinsic)
}

/// `I_e = S(rho_Q') - S_e` in bits. May be negative.
pub fn coherent_information(ch: &KrausChannel, rho_rq: &DensityMatrix) -> Result<f64> {
    let se = entropy_exchange_routes(ch, rho_rq)?;
    let q_out = se.output.partial_trace(&[1])?;
    Ok(von_neumann_entropy(&q_out) - se.extrinsic)
}

/// Modified entanglement fidelity: `max_U <psi| (1 (x) U) rho_RQ' (1 (x) U)^dagger |psi>`
/// over `U` in SU(2). Only qubit `Q` is supported.
pub fn mef(ch: &KrausChannel, psi_rq: &PureState) -> Result<f64> {
    let rho = density_from_pure(psi_rq);
    let out = apply_extended(ch, &rho)?;
    Ok(maximize_fidelity(psi_rq, &out)?.fidelity)
}

/// Both sides of the quantum Fano inequality `h(F) + (1 - F) log2(d^2 - 1) >= S_e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoCheck {
    pub lhs: f64,
    pub slack: f64,
}

pub fn fano_check(f_e: f64, s_e: f64, d: usize) -> Result<FanoCheck> {
    if !(0.0..=1.0).contains(&f_e) {
        return Err(Error::OutOfRange {
            name: "f_e",
            value: f_e,
        });
    }
    if !s_e.is_finite() || s_e < 0.0 {
        return Err(Error::OutOfRange {
            name: "s_e",
            value: s_e,
        });
    }
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
        });
    }
    let dd = (d * d - 1) as f64;
    let lhs = binary_entropy(f_e)? + (1.0 - f_e) * dd.log2();
    Ok(FanoCheck {
        lhs,
        slack: lhs - s_e,
    })
}

/// Whether [`metrics`] should run the fidelity optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MefMode {
    #[default]
    Optimize,
    /// Report `NaN` for the fidelity and the Fano columns.
    Skip,
}

/// Slack values below this are treated as a violated Fano inequality.
pub const FANO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelMetrics {
    pub entropy_exchange: f64,
    pub coherent_information: f64,
    pub mef: f64,
    pub fano_lhs: f64,
    pub fano_slack: f64,
}

/// All channel measures for one `(channel, |psi_RQ>)` pair, sharing a single
/// evaluation of `rho_RQ'`. The Fano bound uses `d = ch.dim()`.
pub fn metrics(ch: &KrausChannel, psi_rq: &PureState) -> Result<ChannelMetrics> {
    metrics_with(ch, psi_rq, MefMode::Optimize)
}

pub fn metrics_with(
    ch: &KrausChannel,
    psi_rq: &PureState,
    mode: MefMode,
) -> Result<ChannelMetrics> {
    let rho = density_from_pure(psi_rq);
    let se = entropy_exchange_routes(ch, &rho)?;
    let s_q = von_neumann_entropy(&se.output.partial_trace(&[1])?);
    let entropy_exchange = se.extrinsic;
    let coherent_information = s_q - entropy_exchange;

    let (mef, fano_lhs, fano_slack) = match mode {
        MefMode::Skip => (f64::NAN, f64::NAN, f64::NAN),
        MefMode::Optimize => {
            let f = maximize_fidelity(psi_rq, &se.output)?.fidelity;
            let fano = fano_check(f.min(1.0), entropy_exchange, ch.dim)?;
            if fano.slack < -FANO_TOL {
                return Err(Error::InvalidState(format!(
                    "Fano inequality violated: slack {:e}",
                    fano.slack
                )));
            }
            (f, fano.lhs, fano.slack)
        }
    };
    Ok(ChannelMetrics {
        entropy_exchange,
        coherent_information,
        mef,
        fano_lhs,
        fano_slack,
    })
}
