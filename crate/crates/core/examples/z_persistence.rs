//! Persistence of the maximizer Z_t over [t, t(1+θ)] at t = 10⁵.

use pam_ageing::ageing::{i_theta, z_persistence_run, ZOptions};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let p = ModelParams::preset_line();
    let thetas = [0.5, 1.0, 3.0];
    let run = z_persistence_run(&p, 1e5, &thetas, 300, 17, &ZOptions::default())?;
    for (th, e) in thetas.iter().zip(&run.estimates) {
        println!("θ = {th:<4} P(Z_t = Z_t(1+θ)) = {:.3} ± {:.3}   I(θ) = {:.3}", e.value, e.stderr, i_theta(&p, *th)?);
    }
    println!("failures: {}", run.failures);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
