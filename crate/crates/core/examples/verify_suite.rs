//! Runs the invariant suites, then again with a deliberately wrong closed form
//! to show that they notice.
//!
//! `cargo run --example verify_suite [seed]`

use qexchange::model::{se_analytic, ModelParams};
use qexchange::verify::{run, Reference, VerifyConfig, DEFAULT_SEED};

fn wrong_entropy_exchange(p: &ModelParams) -> f64 {
    se_analytic(p) + 1e-6
}

fn main() {
    let seed = std::env::args()
        .nth(1)
        .map_or(DEFAULT_SEED, |s| s.parse().expect("integer seed"));
    let cfg = VerifyConfig::with_seed(seed);
    println!("{}", run(&cfg));

    let corrupted = VerifyConfig {
        reference: Reference {
            entropy_exchange: wrong_entropy_exchange,
            ..Reference::default()
        },
        ..cfg
    };
    let report = run(&corrupted);
    println!("\nwith a perturbed entropy-exchange formula:");
    for name in ["entropy-routes", "analytic-vs-numeric"] {
        if let Some(suite) = report.suite(name) {
            println!("{suite}");
        }
    }
}
