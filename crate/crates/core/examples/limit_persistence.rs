//! P{Y_1 = Y_(1+θ)} for the cone process against the quadrature of I(θ).

use pam_ageing::ageing::{i_theta, limit_persistence, LIMIT_TOL};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let thetas = [0.25, 1.0, 4.0];
    for p in [ModelParams::preset_line(), ModelParams::preset_plane()] {
        let lp = limit_persistence(&p, &thetas, 20_000, 1, LIMIT_TOL)?;
        println!("d = {} (largest truncation bound {:.1e}):", p.d(), lp.max_bound);
        for (th, e) in thetas.iter().zip(&lp.estimates) {
            let i = i_theta(&p, *th)?;
            println!("  θ = {th:<5} MC {:.4} ± {:.4}   I(θ) = {i:.4}   z = {:+.2}", e.value, e.stderr, (e.value - i) / e.stderr);
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
