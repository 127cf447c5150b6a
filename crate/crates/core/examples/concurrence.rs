//! Concurrence of Schmidt states and of their dephased images.
//!
//! `cargo run --example concurrence`

use std::f64::consts::PI;

use qexchange::model::{evolve_numeric, ModelParams, FIGURE_THETAS};
use qexchange::state::{concurrence, density_from_pure, schmidt_state};

fn main() -> qexchange::Result<()> {
    println!(
        "{:>8} {:>10} {:>10} {:>10}",
        "theta", "C(psi)", "C(pi/3)", "C(pi/2)"
    );
    for theta in FIGURE_THETAS.into_iter().chain([0.0, PI]) {
        let pure = concurrence(&density_from_pure(&schmidt_state(theta, 0.0)?))?;
        let dephased = |lt: f64| -> qexchange::Result<f64> {
            concurrence(&evolve_numeric(&ModelParams::new(theta, 0.0, lt)?)?)
        };
        println!(
            "{theta:>8.4} {pure:>10.6} {:>10.6} {:>10.6}",
            dephased(PI / 3.0)?,
            dephased(PI / 2.0)?
        );
    }
    Ok(())
}
