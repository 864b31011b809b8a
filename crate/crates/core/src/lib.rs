//! Simulation and analytics for the parabolic Anderson model on `Z^d` with an
//! i.i.d. Pareto potential.
//!
//! The crate is organised bottom-up:
//!
//! - [`analytics`]: scaling functions, the variational functional `Φ_t`, the
//!   path-count entropy `η`, the regularized incomplete Beta function and the
//!   weight `φ_θ` entering the ageing function.
//! - [`potential`]: reproducible Pareto fields. [`potential::PotentialSpec`]
//!   evaluates any site from a counter-based hash; [`potential::ExceedanceField`]
//!   samples only the sites that can matter at large times.
//! - [`tracker`]: event-driven tracking of the maximizer `Z_t` of `Φ_t`.
//! - [`solver`]: the normalized lattice Cauchy problem on a growing box.
//! - [`limit`]: the Poisson point process `Π` and the cone process.
//! - [`ageing`]: quadrature of `I(θ)` and Monte Carlo experiment drivers.
//! - [`cli`]: the `pam` command-line front end.
// `!(x > 0.0)` guards reject NaN on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ageing;
pub mod analytics;
pub mod cli;
mod error;
pub mod io;
pub mod limit;
pub mod potential;
pub mod solver;
pub mod tracker;

pub use analytics::{LatticeSite, ModelParams};
pub use error::{Error, Result};

/// Build identifier stamped into every report (`git describe` at build time).
pub const BUILD_ID: &str = env!("PAM_BUILD_ID");
