//! The counter-based Pareto field: reproducible values and their tail.

use pam_ageing::ageing::{ks_critical_one, ks_one_sample, CensoredSample, KS_C_01};
use pam_ageing::potential::lattice::for_each_in_ball;
use pam_ageing::potential::PotentialSpec;
use pam_ageing::{LatticeSite, ModelParams, Result};

pub fn run_example() -> Result<()> {
    let p = ModelParams::preset_plane();
    let field = PotentialSpec::new(p, 2024);
    for c in [[0, 0], [1, 0], [0, -3], [17, 5]] {
        let z = LatticeSite::new(&c);
        println!("ξ({}) = {:.6}", z.to_csv_field(), field.xi(&z));
    }
    let mut xs = Vec::new();
    for_each_in_ball(2, 300, |z| xs.push(field.xi(&z)));
    let n = xs.len();
    let max = xs.iter().cloned().fold(0.0, f64::max);
    let a = p.alpha();
    let d = ks_one_sample(&CensoredSample::uncensored(xs), |x| if x < 1.0 { 0.0 } else { 1.0 - x.powf(-a) });
    println!("{n} sites: max ξ = {max:.3}, KS D = {d:.5} (1% critical {:.5})", ks_critical_one(KS_C_01, n));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
