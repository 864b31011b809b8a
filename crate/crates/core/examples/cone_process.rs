//! The cone process on [1, 10]: leader segments, jump times and tip heights.

use pam_ageing::limit::{cone_path, sample_adaptive, tip_process};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let p = ModelParams::preset_plane();
    let (lo, hi) = (1.0, 10.0);
    let (pat, bound) = sample_adaptive(&p, lo, hi, 7, 1e-6)?;
    println!("{} points after {} enlargements, truncation bound {bound:e}", pat.len(), pat.level);
    let path = cone_path(&pat, lo, hi)?;
    let q = p.q();
    for s in &path.segments {
        let pt = &pat.points[s.index];
        println!(
            "[{:7.4}, {:7.4}]  |Y1| = {:.4}  Y2 = {:+.4}  w = {:.4}",
            s.t_start,
            s.t_end,
            pt.norm,
            pt.y,
            pt.w(q)
        );
    }
    let times: Vec<f64> = (0..=9).map(|k| lo + k as f64).collect();
    for (t, tip) in tip_process(&path, &pat, &times)? {
        println!("tip({t:>4}) = {tip:.5}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
