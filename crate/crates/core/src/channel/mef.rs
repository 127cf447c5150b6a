//! Deterministic maximization of the entanglement fidelity over local SU(2)
//! corrections on the channel output.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, C64};
use crate::state::{DensityMatrix, PureState};

/// Points per Euler angle in the coarse search.
pub const MEF_GRID_POINTS: usize = 24;
/// Coordinate descent stops once its step drops below this.
pub const MEF_STEP_TOL: f64 = 1e-7;
/// Best grid points handed to the local refinement.
const REFINE_STARTS: usize = 4;
const MAX_EVALUATIONS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MefSolution {
    pub fidelity: f64,
    /// Euler angles `(alpha, beta, gamma)` of the maximizing correction.
    pub angles: [f64; 3],
}

fn su2_entries(alpha: f64, beta: f64, gamma: f64) -> [C64; 4] {
    // e^{i a Z/2} e^{i b Y/2} e^{i g Z/2}
    let (cb, sb) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let plus = C64::from_polar(1.0, (alpha + gamma) / 2.0);
    let minus = C64::from_polar(1.0, (alpha - gamma) / 2.0);
    [plus * cb, minus * sb, -minus.conj() * sb, plus.conj() * cb]
}

/// `e^{i alpha Z/2} e^{i beta Y/2} e^{i gamma Z/2}`.
pub fn su2_rotation(alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let [a, b, cc, d] = su2_entries(alpha, beta, gamma);
    ComplexMatrix::new(2, vec![a, b, cc, d]).expect("finite angles")
}

/// Fidelity `<phi| rho |phi>` with `phi = (1 (x) U^dagger) psi`, which equals
/// `<psi| (1 (x) U) rho (1 (x) U)^dagger |psi>`.
struct Objective<'a> {
    psi: &'a [C64],
    rho: &'a ComplexMatrix,
    phi: Vec<C64>,
}

impl Objective<'_> {
    fn eval(&mut self, angles: [f64; 3]) -> f64 {
        let [u00, u01, u10, u11] = su2_entries(angles[0], angles[1], angles[2]);
        for (chunk, out) in self.psi.chunks_exact(2).zip(self.phi.chunks_exact_mut(2)) {
            out[0] = u00.conj() * chunk[0] + u10.conj() * chunk[1];
            out[1] = u01.conj() * chunk[0] + u11.conj() * chunk[1];
        }
        let n = self.phi.len();
        let data = self.rho.as_slice();
        let mut acc = c(0.0, 0.0);
        for i in 0..n {
            let row = &data[i * n..(i + 1) * n];
            let r: C64 = row.iter().zip(&self.phi).map(|(a, b)| a * b).sum();
            acc += self.phi[i].conj() * r;
        }
        acc.re
    }
}

/// Coarse grid over the Euler angles followed by coordinate descent from the
/// best few grid points. No randomness; the same input always gives the same
/// answer. `U = 1` is a grid point, so the result never falls below the plain
/// entanglement fidelity.
pub fn maximize_fidelity(psi_rq: &PureState, rho_out: &DensityMatrix) -> Result<MefSolution> {
    match psi_rq.dims() {
        [_, 2] => {}
        dims => {
            return Err(Error::Unsupported(format!(
                "fidelity maximization needs a qubit Q, got dims {dims:?}"
            )))
        }
    }
    if psi_rq.dims() != rho_out.dims() {
        return Err(Error::InvalidSubsystems(format!(
            "state on {:?} vs channel output on {:?}",
            psi_rq.dims(),
            rho_out.dims()
        )));
    }
    let mut objective = Objective {
        psi: psi_rq.amplitudes(),
        rho: rho_out.matrix(),
        phi: vec![c(0.0, 0.0); psi_rq.dim()],
    };

    let n = MEF_GRID_POINTS;
    let periodic = |k: usize| 2.0 * PI * k as f64 / n as f64;
    let polar = |k: usize| PI * k as f64 / (n - 1) as f64;
    let mut grid = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = [periodic(i), polar(j), periodic(k)];
                grid.push((objective.eval(x), x));
            }
        }
    }
    // Stable: ties keep grid order, so the identity wins among equals.
    grid.sort_by(|a, b| b.0.total_cmp(&a.0));

    let step0 = 2.0 * PI / n as f64;
    let mut best = MefSolution {
        fidelity: grid[0].0,
        angles: grid[0].1,
    };
    for &(value, start) in grid.iter().take(REFINE_STARTS) {
        let (angles, fidelity) = refine(&mut objective, start, value, step0);
        if fidelity > best.fidelity {
            best = MefSolution { fidelity, angles };
        }
    }
    Ok(best)
}

fn refine(
    objective: &mut Objective<'_>,
    start: [f64; 3],
    value: f64,
    step0: f64,
) -> ([f64; 3], f64) {
    let (mut x, mut best, mut step) = (start, value, step0);
    let mut evaluations = 0;
    while step >= MEF_STEP_TOL && evaluations < MAX_EVALUATIONS {
        let mut improved = false;
        'coords: for k in 0..3 {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[k] += dir * step;
                let v = objective.eval(y);
                evaluations += 1;
                if v > best {
                    x = y;
                    best = v;
                    improved = true;
                    break 'coords;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best)
}
