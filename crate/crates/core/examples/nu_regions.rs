//! ν-mass of the region of points that overtake a given point within [1, 1+θ].

use pam_ageing::limit::nu_region_mass;
use pam_ageing::{ModelParams, Result};

pub fn run_example() -> Result<()> {
    let p = ModelParams::preset_line();
    // θ = 0 depends on y only
    for r in [0.0, 1.0, 10.0] {
        println!("θ=0 r={r:<4} y=1: {:.6}", nu_region_mass(&p, 0.0, r, 1.0)?);
    }
    // in d=1, α=2 the mass is 2/y + 2θ/(y + r)
    for (th, r, y) in [(1.0, 1.0, 1.0), (4.0, 0.5, 2.0), (0.25, 3.0, 0.5)] {
        let m = nu_region_mass(&p, th, r, y)?;
        println!("θ={th:<4} r={r:<4} y={y:<4}: {m:.6} (closed form {:.6})", 2.0 / y + 2.0 * th / (y + r));
    }
    let q = ModelParams::preset_plane();
    println!("plane θ=1 r=1 y=1: {:.6}", nu_region_mass(&q, 1.0, 1.0, 1.0)?);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
