//! Two entangled qubits `A` and `B`, with `A` dephased through a
//! `Z (x) Z` coupling to a maximally mixed control qubit `C`.
//!
//! Subsystem order is `(A, B, C)`, with `A` most significant. `B` plays the
//! isolated reference `R` and `A` the channel input `Q`; the channel layer
//! expects `(R, Q)`, so states are swapped to `(B, A)` before reaching it.
//!
//! Each closed form here has a numeric counterpart built from the generic
//! layers, and [`evaluate_point`] checks that the two agree.

use std::f64::consts::PI;

use crate::channel::{self, kraus_from_dilation, KrausChannel, MefMode};
use crate::error::{Error, Result};
use crate::linalg::{c, embed, expm_i_hermitian, kron, pauli, ComplexMatrix, C64};
use crate::state::{
    binary_entropy, concurrence, density_from_pure, schmidt_state, von_neumann_entropy,
    DensityMatrix, PureState,
};

/// Largest allowed gap between a closed form and its simulated value.
pub const AGREEMENT_TOL: f64 = 1e-9;

/// The four entanglement angles of the published evolution plots.
pub const FIGURE_THETAS: [f64; 4] = [PI / 4.0, PI / 3.0, PI / 2.0, 3.0 * PI / 4.0];

/// Entanglement angle `theta`, Schmidt phase `phi` and dimensionless
/// interaction time `lambda * t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    theta: f64,
    phi: f64,
    lambda_t: f64,
}

impl ModelParams {
    pub fn new(theta: f64, phi: f64, lambda_t: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
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
        if !lambda_t.is_finite() {
            return Err(Error::OutOfRange {
                name: "lambda_t",
                value: lambda_t,
            });
        }
        Ok(Self {
            theta,
            phi,
            lambda_t,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn lambda_t(&self) -> f64 {
        self.lambda_t
    }

    pub fn with_lambda_t(&self, lambda_t: f64) -> Result<Self> {
        Self::new(self.theta, self.phi, lambda_t)
    }

    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        Self::new(self.theta, phi, self.lambda_t)
    }
}

/// `|psi(theta, phi)>` on `(A, B)`.
pub fn initial_state(p: &ModelParams) -> PureState {
    schmidt_state(p.theta, p.phi).expect("theta validated by ModelParams")
}

/// `Z_A (x) (|alpha><alpha| - |beta><beta|) / 2` on `(A, C)`, i.e. the coupling
/// Hamiltonian per unit strength. `|alpha>`, `|beta>` is the computational
/// basis of `C`.
pub fn interaction_hamiltonian() -> ComplexMatrix {
    kron(&pauli::z(), &pauli::z()).scale_real(0.5)
}

/// `U = exp(-i t H)` on `(A, C)`.
pub fn interaction_unitary(lambda_t: f64) -> Result<ComplexMatrix> {
    if !lambda_t.is_finite() {
        return Err(Error::OutOfRange {
            name: "lambda_t",
            value: lambda_t,
        });
    }
    expm_i_hermitian(&interaction_hamiltonian(), -lambda_t)
}

/// Control qubit state `1/2`.
pub fn control_state() -> DensityMatrix {
    DensityMatrix::maximally_mixed(vec![2])
}

/// `rho_AB' = Tr_C[(U (x) 1_B) (|psi><psi| (x) 1/2) (U (x) 1_B)^dagger]`, by
/// direct three-qubit evolution.
pub fn evolve_numeric(p: &ModelParams) -> Result<DensityMatrix> {
    let lambda = density_from_pure(&initial_state(p)).tensor(&control_state());
    let u = embed(&interaction_unitary(p.lambda_t)?, &[2, 2, 2], &[0, 2])?;
    lambda.evolve(&u)?.partial_trace(&[0, 1])
}

/// Closed form of the evolved two-qubit state. Only the `|+z-z>`, `|-z+z>`
/// block is populated; its coherence is damped by `cos(lambda t)` and carries
/// the Schmidt phase `e^{-i phi}`.
pub fn rho_ab_analytic(p: &ModelParams) -> Result<DensityMatrix> {
    let (ch, sh) = ((p.theta / 2.0).cos(), (p.theta / 2.0).sin());
    let coherence = C64::from_polar(p.lambda_t.cos() * ch * sh, -p.phi);
    let mut m = ComplexMatrix::zeros(4);
    m.set(1, 1, c(ch * ch, 0.0))?;
    m.set(2, 2, c(sh * sh, 0.0))?;
    m.set(1, 2, coherence)?;
    m.set(2, 1, coherence.conj())?;
    DensityMatrix::new(vec![2, 2], m)
}

/// Kraus pair of the dephasing channel on `A`, derived from the dilation.
pub fn model_channel(lambda_t: f64) -> Result<KrausChannel> {
    kraus_from_dilation(&interaction_unitary(lambda_t)?, &control_state())
}

/// The same pair written out: `E_alpha = e^{-i Z lt/2}/sqrt 2`, `E_beta = e^{+i Z lt/2}/sqrt 2`.
pub fn kraus_closed_form(lambda_t: f64) -> Result<KrausChannel> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let half = lambda_t / 2.0;
    let e_alpha = ComplexMatrix::from_diag(&[C64::from_polar(h, -half), C64::from_polar(h, half)])?;
    let e_beta = ComplexMatrix::from_diag(&[C64::from_polar(h, half), C64::from_polar(h, -half)])?;
    KrausChannel::new(vec![e_alpha, e_beta])
}

/// `C = sin(theta) |cos(lambda t)|`.
pub fn concurrence_analytic(p: &ModelParams) -> f64 {
    p.theta.sin() * p.lambda_t.cos().abs()
}

/// `W = 1/2 [[1, cos lt - i sin lt cos theta], [cos lt + i sin lt cos theta, 1]]`.
pub fn w_analytic(p: &ModelParams) -> Result<DensityMatrix> {
    let off = c(p.lambda_t.cos(), -p.lambda_t.sin() * p.theta.cos()) * 0.5;
    let m = ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), off], vec![off.conj(), c(0.5, 0.0)]])?;
    DensityMatrix::from_matrix(m)
}

/// `r = sqrt(cos^2 lt + cos^2 theta sin^2 lt)`, the Bloch length of `W`.
pub fn w_bloch_radius(p: &ModelParams) -> f64 {
    let (s, cl) = p.lambda_t.sin_cos();
    (cl * cl + p.theta.cos().powi(2) * s * s).sqrt().min(1.0)
}

/// Entropy exchange as the two-term sum over the eigenvalues `(1 -+ r)/2` of `W`.
pub fn se_analytic(p: &ModelParams) -> f64 {
    let r = w_bloch_radius(p);
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(0.5 * (1.0 - r)) + term(0.5 * (1.0 + r))
}

/// `rho_A' = diag(cos^2(theta/2), sin^2(theta/2))`, constant in time.
pub fn rho_a_out_analytic(p: &ModelParams) -> Result<DensityMatrix> {
    DensityMatrix::from_matrix(ComplexMatrix::from_real_diag(&[
        (p.theta / 2.0).cos().powi(2),
        (p.theta / 2.0).sin().powi(2),
    ])?)
}

/// `I_e = h(cos^2(theta/2)) - S_e`.
pub fn ie_analytic(p: &ModelParams) -> f64 {
    let pop = (p.theta / 2.0).cos().powi(2).clamp(0.0, 1.0);
    binary_entropy(pop).expect("clamped to [0, 1]") - se_analytic(p)
}

/// Reorders an `(A, B)` state into the `(R, Q) = (B, A)` layout.
pub fn reference_first(psi_ab: &PureState) -> PureState {
    psi_ab.permute(&[1, 0]).expect("two-subsystem swap")
}

/// Every quantity at one parameter point, closed form next to simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    pub params: ModelParams,
    pub concurrence_analytic: f64,
    pub concurrence_numeric: f64,
    pub se_analytic: f64,
    /// `S(rho_AB')` from the three-qubit evolution.
    pub se_numeric: f64,
    /// `S(W)` from the dilated Kraus pair.
    pub se_intrinsic: f64,
    pub ie_analytic: f64,
    pub ie_numeric: f64,
    /// `NaN` when the optimizer was skipped.
    pub mef_numeric: f64,
    pub fano_lhs: f64,
    pub fano_slack: f64,
}

pub fn evaluate_point(p: &ModelParams) -> Result<ModelPoint> {
    evaluate_point_with(p, MefMode::Optimize)
}

/// Evaluates one point and fails with [`Error::ModelDisagreement`] if any
/// closed form is off its simulated value by more than [`AGREEMENT_TOL`].
pub fn evaluate_point_with(p: &ModelParams, mode: MefMode) -> Result<ModelPoint> {
    let rho_ab = evolve_numeric(p)?;
    let concurrence_numeric = concurrence(&rho_ab)?;
    let se_numeric = von_neumann_entropy(&rho_ab);
    let ie_numeric = von_neumann_entropy(&rho_ab.partial_trace(&[0])?) - se_numeric;

    let ch = model_channel(p.lambda_t)?;
    let psi_ba = reference_first(&initial_state(p));
    let metrics = channel::metrics_with(&ch, &psi_ba, mode)?;
    let rho_a = density_from_pure(&initial_state(p)).partial_trace(&[0])?;
    let se_intrinsic = von_neumann_entropy(&channel::w_matrix(&ch, &rho_a)?);

    let point = ModelPoint {
        params: *p,
        concurrence_analytic: concurrence_analytic(p),
        concurrence_numeric,
        se_analytic: se_analytic(p),
        se_numeric,
        se_intrinsic,
        ie_analytic: ie_analytic(p),
        ie_numeric,
        mef_numeric: metrics.mef,
        fano_lhs: metrics.fano_lhs,
        fano_slack: metrics.fano_slack,
    };
    let pairs = [
        (
            "concurrence",
            point.concurrence_analytic,
            point.concurrence_numeric,
        ),
        ("entropy exchange", point.se_analytic, point.se_numeric),
        (
            "entropy exchange (W)",
            point.se_analytic,
            point.se_intrinsic,
        ),
        (
            "entropy exchange (Kraus)",
            point.se_analytic,
            metrics.entropy_exchange,
        ),
        ("coherent information", point.ie_analytic, point.ie_numeric),
        (
            "coherent information (Kraus)",
            point.ie_analytic,
            metrics.coherent_information,
        ),
    ];
    for (quantity, analytic, numeric) in pairs {
        if (analytic - numeric).abs() > AGREEMENT_TOL {
            return Err(Error::ModelDisagreement {
                quantity,
                analytic,
                numeric,
            });
        }
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply_extended, w_matrix};
    use crate::state::state_fidelity;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn params(theta: f64, lt: f64) -> ModelParams {
        ModelParams::new(theta, 0.0, lt).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(-0.01, 0.0, 0.0).is_err());
        assert!(ModelParams::new(PI + 0.01, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 0.0).is_err());
        assert!(ModelParams::new(1.0, 0.0, f64::INFINITY).is_err());
        assert!(ModelParams::new(PI, 0.0, 100.0).is_ok());
    }

    #[test]
    fn initial_state_cases() {
        let bell = density_from_pure(&initial_state(&params(FRAC_PI_2, 0.0)));
        assert_abs_diff_eq!(concurrence(&bell).unwrap(), 1.0, epsilon = 1e-12);
        let product = initial_state(&params(0.0, 0.0));
        assert_eq!(product, PureState::basis(vec![2, 2], 1).unwrap());
    }

    #[test]
    fn interaction_unitary_cases() {
        assert!(
            interaction_unitary(0.0)
                .unwrap()
                .max_abs_diff(&ComplexMatrix::identity(4))
                < 1e-15
        );
        // Oracle: exponentiate the diagonal (1/2, -1/2, -1/2, 1/2) entry by entry.
        let expected =
            ComplexMatrix::from_diag(&[c(0.0, -1.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, -1.0)])
                .unwrap();
        assert!(interaction_unitary(PI).unwrap().max_abs_diff(&expected) < 1e-15);
        for k in 0..20 {
            let lt = -7.0 + 0.73 * k as f64;
            assert!(interaction_unitary(lt).unwrap().unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn evolution_at_zero_time_is_trivial() {
        let p = ModelParams::new(1.1, 0.4, 0.0).unwrap();
        let evolved = evolve_numeric(&p).unwrap();
        let initial = density_from_pure(&initial_state(&p));
        assert!(evolved.matrix().max_abs_diff(initial.matrix()) < 1e-15);
    }

    #[test]
    fn product_state_is_a_fixed_point() {
        let fixed = ComplexMatrix::from_real_diag(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        for k in 0..10 {
            let rho = evolve_numeric(&params(0.0, 0.6 * k as f64)).unwrap();
            assert!(rho.matrix().max_abs_diff(&fixed) < 1e-15);
        }
    }

    #[test]
    fn closed_form_state_matches_simulation() {
        for &theta in &[0.0, 0.3, FRAC_PI_4, FRAC_PI_2, 2.5, PI] {
            for k in 0..13 {
                let p = ModelParams::new(theta, 0.37 * k as f64, 0.5 * k as f64).unwrap();
                let diff = evolve_numeric(&p)
                    .unwrap()
                    .matrix()
                    .max_abs_diff(rho_ab_analytic(&p).unwrap().matrix());
                assert!(diff < 1e-12, "theta {theta} k {k}: {diff:e}");
            }
        }
    }

    #[test]
    fn closed_form_state_special_points() {
        let start = rho_ab_analytic(&params(FRAC_PI_2, 0.0)).unwrap();
        assert_abs_diff_eq!(start.matrix().get(1, 2).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(start.purity(), 1.0, epsilon = 1e-14);
        let separable = rho_ab_analytic(&params(FRAC_PI_2, FRAC_PI_2)).unwrap();
        let expected = ComplexMatrix::from_real_diag(&[0.0, 0.5, 0.5, 0.0]).unwrap();
        assert!(separable.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn dilated_channel_matches_closed_form_pair() {
        for k in 0..25 {
            let lt = -3.0 + 0.4 * k as f64;
            let derived = model_channel(lt).unwrap();
            let closed = kraus_closed_form(lt).unwrap();
            assert_eq!(derived.len(), 2);
            for (a, b) in derived.ops().iter().zip(closed.ops()) {
                assert!(a.max_abs_diff(b) < 1e-12);
            }
            assert!(derived.completeness_defect() < 1e-12);
        }
    }

    #[test]
    fn channel_at_zero_time_is_identity_map() {
        let ch = model_channel(0.0).unwrap();
        let rho = density_from_pure(&reference_first(&initial_state(&params(1.0, 0.0))));
        let out = apply_extended(&ch, &rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn extended_channel_reproduces_two_qubit_closed_form() {
        for &(theta, lt) in &[(0.4, 0.2), (FRAC_PI_2, 1.0), (2.9, 4.0)] {
            let p = params(theta, lt);
            let ch = model_channel(lt).unwrap();
            let rho_ba = density_from_pure(&reference_first(&initial_state(&p)));
            let out_ab = apply_extended(&ch, &rho_ba)
                .unwrap()
                .permute(&[1, 0])
                .unwrap();
            assert!(
                out_ab
                    .matrix()
                    .max_abs_diff(rho_ab_analytic(&p).unwrap().matrix())
                    < 1e-12
            );
        }
    }

    #[test]
    fn concurrence_closed_form_cases() {
        assert_abs_diff_eq!(
            concurrence_analytic(&params(FRAC_PI_2, 0.0)),
            1.0,
            epsilon = 1e-15
        );
        for &theta in &[0.3, 1.0, 2.0] {
            assert!(concurrence_analytic(&params(theta, FRAC_PI_2)) < 1e-15);
            assert_abs_diff_eq!(
                concurrence_analytic(&params(theta, PI)),
                theta.sin(),
                epsilon = 1e-15
            );
        }
        assert_abs_diff_eq!(
            concurrence_analytic(&params(FRAC_PI_4, FRAC_PI_3)),
            0.3535533906,
            epsilon = 1e-10
        );
    }

    #[test]
    fn w_closed_form_cases() {
        let w0 = w_analytic(&params(1.3, 0.0)).unwrap();
        let ev = w0.eigenvalues();
        assert_abs_diff_eq!(ev[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-15);
        assert!(von_neumann_entropy(&w0) < 1e-12);
        let half = w_analytic(&params(FRAC_PI_2, FRAC_PI_2)).unwrap();
        assert!(
            half.matrix()
                .max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5))
                < 1e-16
        );
        for &(theta, lt) in &[(0.2, 0.3), (1.9, 2.2), (PI, 5.0)] {
            let p = params(theta, lt);
            let rho_a = density_from_pure(&initial_state(&p))
                .partial_trace(&[0])
                .unwrap();
            let numeric = w_matrix(&model_channel(lt).unwrap(), &rho_a).unwrap();
            assert!(
                numeric
                    .matrix()
                    .max_abs_diff(w_analytic(&p).unwrap().matrix())
                    < 1e-12
            );
        }
    }

    #[test]
    fn entropy_exchange_closed_form_cases() {
        assert_abs_diff_eq!(
            se_analytic(&params(FRAC_PI_2, FRAC_PI_2)),
            1.0,
            epsilon = 1e-15
        );
        for k in 0..10 {
            let lt = 0.7 * k as f64;
            assert!(se_analytic(&params(0.0, lt)) < 1e-10);
            assert_eq!(se_analytic(&params(0.3 * k as f64 / 3.0, 0.0)), 0.0);
        }
        // equals the binary entropy of the larger eigenvalue of W
        let p = params(1.2, 0.8);
        let r = w_bloch_radius(&p);
        assert_abs_diff_eq!(
            se_analytic(&p),
            binary_entropy((1.0 + r) / 2.0).unwrap(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            se_analytic(&p),
            von_neumann_entropy(&w_analytic(&p).unwrap()),
            epsilon = 1e-13
        );
    }

    #[test]
    fn coherent_information_closed_form_cases() {
        assert_abs_diff_eq!(ie_analytic(&params(FRAC_PI_2, 0.0)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            ie_analytic(&params(FRAC_PI_2, FRAC_PI_2)),
            0.0,
            epsilon = 1e-15
        );
        for k in 0..10 {
            assert!(ie_analytic(&params(0.0, 0.7 * k as f64)).abs() < 1e-10);
        }
    }

    #[test]
    fn output_marginal_is_time_independent() {
        for k in 0..10 {
            let p = params(1.0, 0.6 * k as f64);
            let a_out = evolve_numeric(&p).unwrap().partial_trace(&[0]).unwrap();
            assert!(
                a_out
                    .matrix()
                    .max_abs_diff(rho_a_out_analytic(&p).unwrap().matrix())
                    < 1e-15
            );
        }
    }

    #[test]
    fn evaluate_point_cases() {
        let start = evaluate_point(&params(FRAC_PI_2, 0.0)).unwrap();
        assert_abs_diff_eq!(start.concurrence_numeric, 1.0, epsilon = 1e-12);
        assert!(start.se_numeric.abs() < 1e-10);
        assert_abs_diff_eq!(start.ie_numeric, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(start.mef_numeric, 1.0, epsilon = 1e-12);
        assert!(start.fano_slack.abs() < 1e-10);

        let p = params(FRAC_PI_4, FRAC_PI_3);
        let point = evaluate_point(&p).unwrap();
        assert_abs_diff_eq!(point.concurrence_numeric, 0.3535533906, epsilon = 1e-10);
        assert_abs_diff_eq!(point.se_numeric, se_analytic(&p), epsilon = 1e-12);
        assert_abs_diff_eq!(point.ie_numeric, ie_analytic(&p), epsilon = 1e-12);

        let mirrored = evaluate_point(&params(3.0 * FRAC_PI_4, FRAC_PI_3)).unwrap();
        assert_abs_diff_eq!(
            mirrored.concurrence_numeric,
            point.concurrence_numeric,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(mirrored.se_numeric, point.se_numeric, epsilon = 1e-12);
    }

    #[test]
    fn skipped_fidelity_reports_nan() {
        let point = evaluate_point_with(&params(1.0, 1.0), MefMode::Skip).unwrap();
        assert!(point.mef_numeric.is_nan() && point.fano_lhs.is_nan() && point.fano_slack.is_nan());
        assert!(point.se_numeric > 0.0);
    }

    #[test]
    fn plain_fidelity_is_a_lower_bound_for_the_optimized_one() {
        for &(theta, lt) in &[(0.5, 0.4), (FRAC_PI_2, 1.2), (2.0, 2.5)] {
            let p = params(theta, lt);
            let psi = initial_state(&p);
            let plain = state_fidelity(&psi, &evolve_numeric(&p).unwrap()).unwrap();
            let point = evaluate_point(&p).unwrap();
            assert!(point.mef_numeric >= plain - 1e-15);
            assert!(point.mef_numeric <= 1.0 + 1e-12);
        }
    }
}
