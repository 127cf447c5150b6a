use thiserror::Error;

/// Errors produced by the linear algebra, state, channel and model layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("invalid subsystem layout: {0}")]
    InvalidSubsystems(String),

    #[error("matrix is not Hermitian (max |h - h^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |u u^dagger - 1| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("eigenvalue {value:e} is below the PSD tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("Kraus operators are not complete (max |sum E^dagger E - 1| = {deviation:e})")]
    IncompleteKraus { deviation: f64 },

    #[error("entropy exchange routes disagree: S(rho_RQ') = {extrinsic}, S(W) = {intrinsic}")]
    RouteDisagreement { extrinsic: f64, intrinsic: f64 },

    #[error("{quantity}: analytic {analytic} vs numeric {numeric}")]
    ModelDisagreement {
        quantity: &'static str,
        analytic: f64,
        numeric: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
