//! Rescaled maximizer against the cone process: KS distances along T.

use pam_ageing::ageing::{scaling_marginal_check, ZOptions};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let p = ModelParams::preset_line();
    let run = scaling_marginal_check(&p, &[1e2, 1e4], &[1.0, 2.0], 300, 3, &ZOptions::default())?;
    println!("{:>8} {:>4} {:>8} {:>8} {:>8} {:>9}", "T", "t", "|Z|/r", "Φ/a", "ξ/a", "critical");
    for r in &run.rows {
        println!(
            "{:>8} {:>4} {:>8.4} {:>8.4} {:>8.4} {:>9.4}",
            r.big_t, r.t_probe, r.ks_norm, r.ks_phi, r.ks_xi, r.critical
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
