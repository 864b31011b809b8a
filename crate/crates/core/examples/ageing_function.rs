//! The ageing function I(θ) for both presets, with its two tail constants.

use pam_ageing::ageing::{i_tail_constants, i_theta};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    for p in [ModelParams::preset_line(), ModelParams::preset_plane()] {
        let c = i_tail_constants(&p)?;
        println!("d = {}, α = {}: lim θ^d I(θ) = {:.6}, lim (1 - I)/θ = {:.6}", p.d(), p.alpha(), c.large_theta, c.c0);
        println!("{:>10} {:>12} {:>14}", "θ", "I(θ)", "θ^d I(θ)");
        for th in [1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1e4] {
            let i = i_theta(&p, th)?;
            println!("{th:>10} {i:>12.8} {:>14.8}", th.powi(p.d() as i32) * i);
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
