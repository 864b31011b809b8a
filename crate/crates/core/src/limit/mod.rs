//! The scaling limit: the Poisson process `Π` on `{y > -q|x|}` with intensity
//! `ν(dx dy) = dx ⊗ α (y + q|x|)^{-α-1} dy`, and the cone process built on it.

mod cone;
mod mass;
mod pattern;

pub use cone::{cone_argmax, cone_path, tip_process, tip_with, ConePath, Segment};
pub use mass::{
    excluded_mass, nu_region_mass, radial_tail, sample_adaptive, truncation_bound, window_volume,
    DEFAULT_CONE_M,
};
pub use pattern::{sample_pattern, Point, PointPattern, Window, MAX_LEVEL};
