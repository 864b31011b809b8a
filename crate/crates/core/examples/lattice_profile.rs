//! Solve the lattice problem and watch the profile localize at its peak.

use pam_ageing::potential::PotentialSpec;
use pam_ageing::solver::{solve, SolverConfig};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let field = PotentialSpec::new(ModelParams::preset_line(), 21);
    let schedule: Vec<f64> = (1..=10).map(|k| 2.0 * k as f64).collect();
    let out = solve(&field, 20.0, &schedule, SolverConfig::default())?;
    println!("{:>6} {:>8} {:>10} {:>14}", "t", "X_t", "v(t,X_t)", "log U(t)/t");
    for o in &out.series {
        println!("{:>6} {:>8} {:>10.5} {:>14.6}", o.t, o.x.to_csv_field(), o.v_peak, o.log_mass / o.t);
    }
    println!(
        "box radius {}, {} steps, max mass drift {:.1e}",
        out.box_radius, out.stats.steps, out.stats.max_mass_drift
    );
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
