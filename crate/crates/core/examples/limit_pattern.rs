//! Sample the limit point process on a window and grow the window in place.

use pam_ageing::limit::{sample_pattern, Window};
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let p = ModelParams::preset_line();
    let w = Window::rect(5.0, 1.0)?;
    let mut pat = sample_pattern(&p, w, 42)?;
    println!("{:?}: expected {} points, got {}", pat.window, w.mass(&p), pat.len());
    let q = p.q();
    let top = pat.points.iter().max_by(|a, b| a.y.total_cmp(&b.y)).expect("nonempty");
    println!("highest point: x = {:?}, y = {:.4}, w = {:.4}", top.x, top.y, top.w(q));
    let before = pat.len();
    pat.enlarge()?;
    println!("after one enlargement: {:?}, {} points ({} new)", pat.window, pat.len(), pat.len() - before);

    let plane = ModelParams::preset_plane();
    let cone = Window::for_range(&plane, 1.0, 3.0)?;
    let cp = sample_pattern(&plane, cone, 42)?;
    println!("plane, cone window {:?}: mass {:.3}, {} points", cone, cone.mass(&plane), cp.len());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
