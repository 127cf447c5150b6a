//! Invariant suites over the dephasing model and the generic channel layer.
//!
//! Each suite reports the worst deviation it saw against a fixed tolerance.
//! Randomized cases draw from a seeded generator, so a given seed always
//! produces the same report.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rayon::prelude::*;

use crate::channel::{
    self, apply_extended, kraus_from_dilation, w_matrix, KrausChannel, MefMode, FANO_TOL,
};
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::model::{self, evaluate_point_with, ModelParams, ModelPoint, FIGURE_THETAS};
use crate::sampling;
use crate::state::{self, density_from_pure, von_neumann_entropy, DensityMatrix};

pub const DEFAULT_SEED: u64 = 2007;

/// Closed forms the suites compare against. Swapping one out lets a test
/// confirm that the suites notice a wrong formula.
#[derive(Clone, Copy)]
pub struct Reference {
    pub concurrence: fn(&ModelParams) -> f64,
    pub entropy_exchange: fn(&ModelParams) -> f64,
    pub coherent_information: fn(&ModelParams) -> f64,
    pub rho_ab: fn(&ModelParams) -> Result<DensityMatrix>,
}

impl Default for Reference {
    fn default() -> Self {
        Self {
            concurrence: model::concurrence_analytic,
            entropy_exchange: model::se_analytic,
            coherent_information: model::ie_analytic,
            rho_ab: model::rho_ab_analytic,
        }
    }
}

#[derive(Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub reference: Reference,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            reference: Reference::default(),
        }
    }
}

impl VerifyConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    /// Worst observed deviation; `NaN` if a case errored.
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Require `max_deviation < tolerance` rather than `<=`.
    pub strict: bool,
    /// Error message from the first failing case, if any.
    pub error: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && if self.strict {
                self.max_deviation < self.tolerance
            } else {
                self.max_deviation <= self.tolerance
            }
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status}  {:<24} cases={:<6} max_dev={:.3e}  tol={:.0e}",
            self.name, self.cases, self.max_deviation, self.tolerance
        )?;
        if let Some(e) = &self.error {
            write!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let passed = self.suites.iter().filter(|s| s.passed()).count();
        write!(f, "{passed}/{} suites passed", self.suites.len())
    }
}

/// Folds per-case deviations into a suite result, keeping the first error.
fn collect(name: &'static str, tolerance: f64, cases: Vec<Result<f64>>) -> SuiteResult {
    let mut result = SuiteResult {
        name,
        cases: cases.len(),
        max_deviation: 0.0,
        tolerance,
        strict: false,
        error: None,
    };
    for case in cases {
        match case {
            Ok(d) => result.max_deviation = result.max_deviation.max(d),
            Err(e) => {
                result.max_deviation = f64::NAN;
                result.error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    result
}

fn sweep_grid(steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| 2.0 * PI * i as f64 / (steps - 1) as f64)
        .collect()
}

fn grid_params(thetas: &[f64], steps: usize) -> Vec<ModelParams> {
    thetas
        .iter()
        .flat_map(|&theta| {
            sweep_grid(steps)
                .into_iter()
                .map(move |lt| ModelParams::new(theta, 0.0, lt).expect("grid angles are valid"))
        })
        .collect()
}

/// Simulated quantities without the cross-checks of `evaluate_point`, so the
/// suites can measure deviations instead of stopping at the first mismatch.
struct Simulated {
    rho_ab: DensityMatrix,
    concurrence: f64,
    se_joint: f64,
    se_kraus: f64,
    se_w: f64,
    ie: f64,
}

fn simulate(p: &ModelParams) -> Result<Simulated> {
    let rho_ab = model::evolve_numeric(p)?;
    let concurrence = state::concurrence(&rho_ab)?;
    let se_joint = von_neumann_entropy(&rho_ab);
    let ie = von_neumann_entropy(&rho_ab.partial_trace(&[0])?) - se_joint;
    let ch = model::model_channel(p.lambda_t())?;
    let psi = model::initial_state(p);
    let rho_ba = density_from_pure(&model::reference_first(&psi));
    let se_kraus = von_neumann_entropy(&apply_extended(&ch, &rho_ba)?);
    let rho_a = density_from_pure(&psi).partial_trace(&[0])?;
    let se_w = von_neumann_entropy(&w_matrix(&ch, &rho_a)?);
    Ok(Simulated {
        rho_ab,
        concurrence,
        se_joint,
        se_kraus,
        se_w,
        ie,
    })
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, &x| m.max(x))
}

/// Runs every suite.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let reference = cfg.reference;
    let mut rng = sampling::seeded(cfg.seed);
    let mut suites = Vec::new();

    let mut thetas = FIGURE_THETAS.to_vec();
    thetas.extend([0.0, PI]);
    let grid = grid_params(&thetas, 201);

    suites.push(collect(
        "analytic-vs-numeric",
        model::AGREEMENT_TOL,
        grid.par_iter()
            .map(|p| {
                let sim = simulate(p)?;
                Ok(max_of(&[
                    ((reference.concurrence)(p) - sim.concurrence).abs(),
                    ((reference.entropy_exchange)(p) - sim.se_joint).abs(),
                    ((reference.coherent_information)(p) - sim.ie).abs(),
                    sim.rho_ab
                        .matrix()
                        .max_abs_diff((reference.rho_ab)(p)?.matrix()),
                ]))
            })
            .collect(),
    ));

    let random_params: Vec<ModelParams> = (0..500)
        .map(|_| {
            use rand::Rng;
            ModelParams::new(
                rng.random_range(0.0..=PI),
                rng.random_range(-PI..PI),
                rng.random_range(-4.0 * PI..4.0 * PI),
            )
            .expect("sampled in range")
        })
        .collect();
    suites.push(collect(
        "rho-ab-oracle",
        1e-12,
        random_params
            .par_iter()
            .map(|p| {
                let numeric = model::evolve_numeric(p)?;
                Ok(numeric
                    .matrix()
                    .max_abs_diff((reference.rho_ab)(p)?.matrix()))
            })
            .collect(),
    ));

    let mut completeness: Vec<Result<f64>> = sweep_grid(201)
        .into_iter()
        .map(|lt| Ok(model::model_channel(lt)?.completeness_defect()))
        .collect();
    for k in 0..50 {
        let (dq, de) = [(2, 2), (2, 3), (3, 2)][k % 3];
        let u = sampling::random_unitary(&mut rng, dq * de);
        let env = sampling::random_density(&mut rng, vec![de]);
        completeness.push(kraus_from_dilation(&u, &env).map(|ch| ch.completeness_defect()));
    }
    suites.push(collect(
        "kraus-completeness",
        channel::COMPLETENESS_TOL,
        completeness,
    ));

    suites.push(collect(
        "kraus-closed-form",
        1e-12,
        sweep_grid(201)
            .into_iter()
            .map(|lt| {
                let derived = model::model_channel(lt)?;
                let closed = model::kraus_closed_form(lt)?;
                if derived.len() != closed.len() {
                    return Ok(f64::INFINITY);
                }
                Ok(derived
                    .ops()
                    .iter()
                    .zip(closed.ops())
                    .map(|(a, b)| a.max_abs_diff(b))
                    .fold(0.0, f64::max))
            })
            .collect(),
    ));

    suites.push(collect(
        "entropy-routes",
        channel::ROUTE_TOL,
        grid.par_iter()
            .map(|p| {
                let sim = simulate(p)?;
                let closed = (reference.entropy_exchange)(p);
                let values = [sim.se_joint, sim.se_kraus, sim.se_w, closed];
                let mut worst: f64 = 0.0;
                for (i, a) in values.iter().enumerate() {
                    for b in &values[i + 1..] {
                        worst = worst.max((a - b).abs());
                    }
                }
                Ok(worst)
            })
            .collect(),
    ));

    suites.push(collect(
        "unitary-channel",
        1e-10,
        (0..30)
            .map(|_| {
                let ch = KrausChannel::unitary(sampling::random_unitary(&mut rng, 2))?;
                let psi = sampling::random_pure(&mut rng, vec![2, 2]);
                let out = apply_extended(&ch, &density_from_pure(&psi))?;
                let largest = *out.eigenvalues().last().expect("non-empty spectrum");
                Ok(von_neumann_entropy(&out).max(1.0 - largest))
            })
            .collect(),
    ));

    let fano_grid = grid_params(&thetas, 41);
    let fano_points: Vec<Result<ModelPoint>> = fano_grid
        .par_iter()
        .map(|p| evaluate_point_with(p, MefMode::Optimize))
        .collect();
    suites.push(collect(
        "fano-inequality",
        FANO_TOL,
        fano_points
            .iter()
            .map(|r| {
                r.as_ref()
                    .map(|pt| (-pt.fano_slack).max(0.0))
                    .map_err(Clone::clone)
            })
            .collect(),
    ));

    suites.push(monotonicity());

    suites.push(collect(
        "periodicity",
        1e-12,
        grid_params(&FIGURE_THETAS, 101)
            .par_iter()
            .map(|p| {
                let a = simulate(p)?;
                let b = simulate(&p.with_lambda_t(p.lambda_t() + PI)?)?;
                Ok(max_of(&[
                    (a.concurrence - b.concurrence).abs(),
                    (a.se_joint - b.se_joint).abs(),
                    (a.ie - b.ie).abs(),
                ]))
            })
            .collect(),
    ));

    let phi_grid = grid_params(&FIGURE_THETAS, 9);
    let phi_cases: Vec<Result<(f64, f64)>> = phi_grid
        .par_iter()
        .map(|p| {
            let base = evaluate_point_with(p, MefMode::Optimize)?;
            let mut scalar_dev: f64 = 0.0;
            let mut mef_dev: f64 = 0.0;
            for phi in [PI / 3.0, 1.0, PI] {
                let other = evaluate_point_with(&p.with_phi(phi)?, MefMode::Optimize)?;
                scalar_dev = scalar_dev.max(max_of(&[
                    (base.concurrence_numeric - other.concurrence_numeric).abs(),
                    (base.se_numeric - other.se_numeric).abs(),
                    (base.se_intrinsic - other.se_intrinsic).abs(),
                    (base.ie_numeric - other.ie_numeric).abs(),
                ]));
                mef_dev = mef_dev.max(max_of(&[
                    (base.mef_numeric - other.mef_numeric).abs(),
                    (base.fano_slack - other.fano_slack).abs(),
                ]));
            }
            Ok((scalar_dev, mef_dev))
        })
        .collect();
    suites.push(collect(
        "phi-invariance",
        1e-9,
        phi_cases
            .iter()
            .map(|r| r.clone().map(|(s, _)| s))
            .collect(),
    ));
    suites.push(collect(
        "phi-invariance-mef",
        1e-6,
        phi_cases
            .iter()
            .map(|r| r.clone().map(|(_, m)| m))
            .collect(),
    ));

    let freedom_params: Vec<ModelParams> =
        [(PI / 4.0, 0.4), (PI / 2.0, 1.1), (3.0 * PI / 4.0, 2.0)]
            .iter()
            .map(|&(t, lt)| ModelParams::new(t, 0.0, lt).expect("valid"))
            .collect();
    let mixings: Vec<ComplexMatrix> = (0..20)
        .map(|_| sampling::random_unitary(&mut rng, 2))
        .collect();
    suites.push(collect(
        "kraus-unitary-freedom",
        1e-9,
        freedom_params
            .iter()
            .flat_map(|p| mixings.iter().map(move |m| (p, m)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|(p, mixing)| {
                let ch = model::model_channel(p.lambda_t())?;
                let psi = model::reference_first(&model::initial_state(p));
                let base = channel::metrics(&ch, &psi)?;
                let other = channel::metrics(&ch.rotated(mixing)?, &psi)?;
                Ok(max_of(&[
                    (base.entropy_exchange - other.entropy_exchange).abs(),
                    (base.coherent_information - other.coherent_information).abs(),
                    (base.mef - other.mef).abs(),
                ]))
            })
            .collect(),
    ));

    VerifyReport {
        seed: cfg.seed,
        suites,
    }
}

/// On `lambda t` in `(0, pi/2)`: concurrence and coherent information strictly
/// decrease, entropy exchange strictly increases. The reported deviation is the
/// largest step in the wrong direction, so any value `>= 0` fails.
fn monotonicity() -> SuiteResult {
    const SAMPLES: usize = 50;
    let cases: Vec<Result<f64>> = FIGURE_THETAS
        .par_iter()
        .map(|&theta| {
            let series: Vec<Simulated> = (1..=SAMPLES)
                .map(|k| {
                    let lt = FRAC_PI_2 * k as f64 / (SAMPLES + 1) as f64;
                    simulate(&ModelParams::new(theta, 0.0, lt)?)
                })
                .collect::<Result<_>>()?;
            let mut worst = f64::NEG_INFINITY;
            for w in series.windows(2) {
                worst = worst
                    .max(w[1].concurrence - w[0].concurrence)
                    .max(w[0].se_joint - w[1].se_joint)
                    .max(w[1].ie - w[0].ie);
            }
            Ok(worst)
        })
        .collect();
    let mut result = collect("monotonicity", 0.0, Vec::new());
    result.cases = cases.len();
    result.strict = true;
    result.max_deviation = f64::NEG_INFINITY;
    for case in cases {
        match case {
            Ok(d) => result.max_deviation = result.max_deviation.max(d),
            Err(e) => {
                result.max_deviation = f64::NAN;
                result.error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    result
}
