//! Entropy exchange computed three ways: from the joint output state, from the
//! Kraus overlap matrix `W`, and from the closed form.
//!
//! `cargo run --example entropy_exchange`

use qexchange::channel::{entropy_exchange_routes, w_matrix};
use qexchange::model::{initial_state, model_channel, reference_first, se_analytic, ModelParams};
use qexchange::state::{density_from_pure, von_neumann_entropy};

fn main() -> qexchange::Result<()> {
    let theta = 1.0;
    println!(
        "{:>6} {:>14} {:>14} {:>14}",
        "lt", "S(rho_RQ')", "S(W)", "closed form"
    );
    for k in 0..=8 {
        let lt = k as f64 * std::f64::consts::PI / 8.0;
        let p = ModelParams::new(theta, 0.0, lt)?;
        let ch = model_channel(lt)?;
        let joint = density_from_pure(&reference_first(&initial_state(&p)));
        let routes = entropy_exchange_routes(&ch, &joint)?;
        let w = w_matrix(&ch, &joint.partial_trace(&[1])?)?;
        println!(
            "{lt:>6.3} {:>14.10} {:>14.10} {:>14.10}",
            routes.extrinsic,
            von_neumann_entropy(&w),
            se_analytic(&p)
        );
    }
    Ok(())
}
