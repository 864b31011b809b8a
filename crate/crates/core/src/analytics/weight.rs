use super::params::ModelParams;
use super::special::reg_inc_beta;
use crate::{Error, Result};

/// `1/φ_θ(v) = 1 - B̃(v) + (1+θ)^α (θ/v + 1)^{d-α} B̃((v+θ)/(1+θ))` with
/// `B̃ = B̃(·; α-d, d)`.
pub fn inv_phi_weight(params: &ModelParams, theta: f64, v: f64) -> Result<f64> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::domain(format!("weight needs v in (0,1], got {v}")));
    }
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::domain(format!("weight needs θ ≥ 0, got {theta}")));
    }
    let df = params.d() as f64;
    let a = params.alpha() - df;
    let lower = reg_inc_beta(v, a, df)?;
    if theta == 0.0 {
        return Ok(1.0);
    }
    let upper = reg_inc_beta(((v + theta) / (1.0 + theta)).min(1.0), a, df)?;
    // (1+θ)^α (θ/v+1)^{d-α} = (1+θ)^d ((1+θ) v / (θ+v))^{α-d}
    let factor = (1.0 + theta).powf(df) * ((1.0 + theta) * v / (theta + v)).powf(a);
    Ok(1.0 - lower + factor * upper)
}

/// The weight `φ_θ(v)` in the integral representation of `I(θ)`.
pub fn phi_weight(params: &ModelParams, theta: f64, v: f64) -> Result<f64> {
    Ok(1.0 / inv_phi_weight(params, theta, v)?)
}
