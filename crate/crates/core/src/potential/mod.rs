//! Reproducible i.i.d. Pareto potentials.

mod field;
pub mod lattice;
pub mod prf;
mod source;
mod spec;

pub use field::{ExceedanceField, DEFAULT_REVEAL_BUDGET};
pub use source::{exceedance_threshold, pilot_floor, Candidate, SiteSource};
pub use spec::{OverrideEntry, OverrideFile, PotentialSpec, ScoredSite, DEFAULT_SITE_BUDGET};
