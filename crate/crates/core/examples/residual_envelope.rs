//! Residual lifetimes: the law of R(t)/t, and the envelope trend along one path.

use pam_ageing::ageing::{envelope_experiment, residual_law_check, Envelope, ZOptions};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let p = ModelParams::preset_line();
    let opts = ZOptions::default();
    let law = residual_law_check(&p, 1e5, 300, 5, &opts)?;
    println!("R(t)/t vs 1 - I: KS D = {:.4}, 5% critical {:.4}, {} censored", law.ks, law.critical, law.censored);
    for choice in [Envelope::Convergent, Envelope::Divergent { c: 1.0 }] {
        let run = envelope_experiment(&p, choice, 12, 5, 1.0, &opts)?;
        println!("{choice:?}: trend {}", if run.trend_ok { "seen" } else { "not seen" });
        for r in &run.rows {
            println!("  n = {:>2}  R/(t h) = {:>10.4}{}", r.n, r.ratio, if r.censored { " (censored)" } else { "" });
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
