//! Coherent information of the dephasing channel for a maximally entangled
//! input, against the identity and a random unitary channel.
//!
//! `cargo run --example coherent_information`

use std::f64::consts::FRAC_PI_2;

use qexchange::channel::{coherent_information, KrausChannel};
use qexchange::model::{initial_state, model_channel, reference_first, ModelParams};
use qexchange::sampling::{random_unitary, seeded};
use qexchange::state::density_from_pure;

fn main() -> qexchange::Result<()> {
    let p = ModelParams::new(FRAC_PI_2, 0.0, 0.0)?;
    let input = density_from_pure(&reference_first(&initial_state(&p)));

    let unitary = KrausChannel::unitary(random_unitary(&mut seeded(3), 2))?;
    println!(
        "identity  : {:.12}",
        coherent_information(&KrausChannel::identity(2), &input)?
    );
    println!(
        "unitary   : {:.12}",
        coherent_information(&unitary, &input)?
    );
    for lt in [0.25, 0.5, 1.0, FRAC_PI_2] {
        println!(
            "lt={lt:<6.4}: {:.12}",
            coherent_information(&model_channel(lt)?, &input)?
        );
    }
    Ok(())
}
