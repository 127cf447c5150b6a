//! Information measures for noisy channels acting on small open quantum
//! systems, with a dephased entangled qubit pair as the worked model.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Jacobi eigensolver, spectral
//!   matrix functions and tensor-product bookkeeping.
//! - [`state`]: validated pure and mixed states with their entropies and
//!   two-qubit concurrence.
//! - [`channel`]: Kraus channels and the information measures built on them.
//! - [`model`]: two entangled qubits `A`, `B` where `A` is dephased by a
//!   control qubit `C`, with every closed-form result next to a brute-force
//!   three-qubit simulation.
//! - [`sweep`] and [`verify`]: CSV sweeps over the interaction time and the
//!   invariant suites behind the `qexchange` binary.
//!
//! ```
//! use qexchange::model::{evaluate_point, ModelParams};
//!
//! let p = ModelParams::new(std::f64::consts::FRAC_PI_2, 0.0, std::f64::consts::FRAC_PI_2).unwrap();
//! let point = evaluate_point(&p).unwrap();
//! assert!(point.concurrence_numeric.abs() < 1e-12);
//! assert!((point.se_numeric - 1.0).abs() < 1e-12);
//! ```

pub mod channel;
pub mod error;
pub mod linalg;
pub mod model;
pub mod sampling;
pub mod state;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
