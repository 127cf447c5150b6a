//! Every quantity at one parameter point, closed form next to simulation.
//!
//! `cargo run --example dephasing_model [theta] [lambda_t]`

use qexchange::model::{evaluate_point, ModelParams};

fn main() -> qexchange::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<f64>().expect("numeric argument"));
    let theta = args.next().unwrap_or(std::f64::consts::FRAC_PI_3);
    let lt = args.next().unwrap_or(0.6);
    let pt = evaluate_point(&ModelParams::new(theta, 0.0, lt)?)?;
    println!("theta = {theta}, lambda_t = {lt}");
    println!("{:<22} {:>16} {:>16}", "", "closed form", "simulated");
    println!(
        "{:<22} {:>16.12} {:>16.12}",
        "concurrence", pt.concurrence_analytic, pt.concurrence_numeric
    );
    println!(
        "{:<22} {:>16.12} {:>16.12}",
        "entropy exchange", pt.se_analytic, pt.se_numeric
    );
    println!("{:<22} {:>16} {:>16.12}", "  via W", "", pt.se_intrinsic);
    println!(
        "{:<22} {:>16.12} {:>16.12}",
        "coherent information", pt.ie_analytic, pt.ie_numeric
    );
    println!("{:<22} {:>16} {:>16.12}", "mef", "", pt.mef_numeric);
    println!("{:<22} {:>16} {:>16.12}", "fano slack", "", pt.fano_slack);
    Ok(())
}
