//! Track the maximizer Z_t of Φ_t from t = 10 to t = 10⁶ on a sparse field.

use pam_ageing::analytics::{scale_a, scale_r};
use pam_ageing::potential::ExceedanceField;
use pam_ageing::tracker::{Tracker, TrackerConfig};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let p = ModelParams::preset_line();
    let mut tr = Tracker::new(ExceedanceField::new(p, 3), 10.0, TrackerConfig::default())?;
    tr.advance(1e6)?;
    println!("{:>14} {:>10} {:>12} {:>10} {:>10}", "τ", "to", "ξ", "|Z|/r_τ", "ξ/a_τ");
    for j in tr.jumps() {
        let (r, a) = (scale_r(&p, j.tau)?, scale_a(&p, j.tau)?);
        println!(
            "{:>14.3} {:>10} {:>12.3} {:>10.4} {:>10.4}",
            j.tau,
            j.to_site.to_csv_field(),
            j.xi_to,
            j.to_site.l1_norm() as f64 / r,
            j.xi_to / a
        );
    }
    let path = tr.path();
    let r = path.residual_lifetime(1e5);
    println!("residual lifetime at t = 1e5: {:.1} (censored: {})", r.value, r.censored);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
