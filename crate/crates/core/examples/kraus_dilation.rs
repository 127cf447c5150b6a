//! Kraus operators from a system-environment unitary, and the freedom to mix
//! them without changing the channel.
//!
//! `cargo run --example kraus_dilation`

use qexchange::channel::{apply, kraus_from_dilation, metrics};
use qexchange::model::{
    initial_state, interaction_unitary, kraus_closed_form, reference_first, ModelParams,
};
use qexchange::sampling::{random_density, random_unitary, seeded};
use qexchange::state::DensityMatrix;

fn main() -> qexchange::Result<()> {
    let lt = 0.9;
    let env = DensityMatrix::maximally_mixed(vec![2]);
    let ch = kraus_from_dilation(&interaction_unitary(lt)?, &env)?;
    let closed = kraus_closed_form(lt)?;
    for (k, (e, f)) in ch.ops().iter().zip(closed.ops()).enumerate() {
        println!("E_{k} = {e:?}");
        println!("  |E_{k} - closed form| = {:.1e}", e.max_abs_diff(f));
    }
    println!("completeness defect: {:.1e}", ch.completeness_defect());

    let mut rng = seeded(42);
    let rho = random_density(&mut rng, vec![2]);
    let rotated = ch.rotated(&random_unitary(&mut rng, 2))?;
    let diff = apply(&ch, &rho)?
        .matrix()
        .max_abs_diff(apply(&rotated, &rho)?.matrix());
    println!("rotated set, output difference: {diff:.1e}");

    let psi = reference_first(&initial_state(&ModelParams::new(1.2, 0.0, lt)?));
    let (a, b) = (metrics(&ch, &psi)?, metrics(&rotated, &psi)?);
    println!(
        "S_e  {:.12} vs {:.12}",
        a.entropy_exchange, b.entropy_exchange
    );
    println!(
        "I_e  {:.12} vs {:.12}",
        a.coherent_information, b.coherent_information
    );
    println!("F_e  {:.12} vs {:.12}", a.mef, b.mef);
    Ok(())
}
