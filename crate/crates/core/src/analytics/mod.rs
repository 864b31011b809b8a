//! Deterministic mathematics shared by every other module.
//!
//! Everything here is a pure function of its arguments.

mod functional;
mod params;
pub mod quadrature;
mod special;
mod weight;

pub use functional::{eta, optimistic_phi, phi, phi_with_eta, scale_a, scale_r};
pub use params::{LatticeSite, ModelParams, MAX_DIM};
pub use special::{beta, ln_beta, ln_gamma, reg_inc_beta};
pub use weight::{inv_phi_weight, phi_weight};
