//! Modified entanglement fidelity and the Fano bound it implies.
//!
//! `cargo run --example modified_fidelity [theta]`

use qexchange::channel::{apply_extended, fano_check, maximize_fidelity, mef};
use qexchange::model::{initial_state, model_channel, reference_first, se_analytic, ModelParams};
use qexchange::state::density_from_pure;

fn main() -> qexchange::Result<()> {
    let theta: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("theta must be a number"))
        .unwrap_or(std::f64::consts::FRAC_PI_2);
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>28}",
        "lt", "F_e", "S_e", "fano_slack", "best local correction"
    );
    for k in 0..=8 {
        let lt = k as f64 * std::f64::consts::PI / 8.0;
        let p = ModelParams::new(theta, 0.0, lt)?;
        let psi = reference_first(&initial_state(&p));
        let ch = model_channel(lt)?;
        let out = apply_extended(&ch, &density_from_pure(&psi))?;
        let best = maximize_fidelity(&psi, &out)?;
        assert_eq!(best.fidelity, mef(&ch, &psi)?);
        let se = se_analytic(&p);
        let fano = fano_check(best.fidelity.min(1.0), se, 2)?;
        let [a, b, g] = best.angles;
        println!(
            "{lt:>6.3} {:>12.9} {se:>12.9} {:>12.9}   ({a:>7.4}, {b:>7.4}, {g:>7.4})",
            best.fidelity, fano.slack
        );
    }
    Ok(())
}
