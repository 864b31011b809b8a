use serde::Serialize;

use crate::analytics::quadrature::integrate;
use crate::analytics::{beta, inv_phi_weight, reg_inc_beta, ModelParams};
use crate::{Error, Result};

const ABS_TOL: f64 = 1e-12;
const REL_TOL: f64 = 1e-11;

/// `I(θ) = B(α-d+1, d)^{-1} ∫₀¹ v^{α-d} (1-v)^{d-1} φ_θ(v) dv`, the limiting
/// probability that the maximizer does not move during `[t, (1+θ)t]`.
pub fn i_theta(params: &ModelParams, theta: f64) -> Result<f64> {
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::domain(format!("I(θ) needs θ ≥ 0, got {theta}")));
    }
    let df = params.d() as f64;
    let e = params.alpha() - df;
    let norm = beta(e + 1.0, df);
    if theta == 0.0 {
        return Ok(1.0);
    }
    let f = |v: f64| Ok(v.powf(e) * (1.0 - v).powf(df - 1.0) / inv_phi_weight(params, theta, v)?);
    // the weight decays on the scale v ~ 1/θ; split there so the adaptive
    // rule sees the bend
    let cut = (1.0 / (1.0 + theta)).clamp(1e-12, 0.5);
    let total = integrate_fallible(f, 0.0, cut)? + integrate_fallible(f, cut, 1.0)?;
    Ok((total / norm).clamp(0.0, 1.0))
}

fn integrate_fallible<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64) -> Result<f64> {
    let mut err = None;
    let q = integrate(
        |v| match f(v) {
            Ok(x) => x,
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        },
        a,
        b,
        ABS_TOL,
        REL_TOL,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(q.value),
    }
}

/// Asymptotic constants of `I`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailConstants {
    /// `lim θ^d I(θ) = 1/(d B(α-d+1, d))`.
    pub large_theta: f64,
    /// `lim (1 - I(θ))/θ` as θ → 0, from differentiating `1/φ_θ` under the
    /// integral.
    pub c0: f64,
    /// `B(α-d+1,d)^{-1} (∫₀¹ α v^{α-d}(1-v)^{d-1} B̃(v; α-d, d) dv + B(2(α-d), 2d-1))`.
    /// Differs from `c0`; reported for comparison.
    pub c0_closed: f64,
}

/// Both tail constants of `I`.
pub fn i_tail_constants(params: &ModelParams) -> Result<TailConstants> {
    let df = params.d() as f64;
    let a = params.alpha();
    let e = a - df;
    let norm = beta(e + 1.0, df);
    let b_ed = beta(e, df);
    // ∂_θ (1/φ_θ(v)) at θ = 0:
    //   d B̃(v) + (α-d)(1 - 1/v) B̃(v) + (1-v) v^{α-d-1}(1-v)^{d-1}/B(α-d,d)
    let slope = integrate_fallible(
        |v| {
            let bt = reg_inc_beta(v, e, df)?;
            let dens = v.powf(e - 1.0) * (1.0 - v).powf(df - 1.0) / b_ed;
            let dw = df * bt + e * (1.0 - 1.0 / v) * bt + (1.0 - v) * dens;
            Ok(v.powf(e) * (1.0 - v).powf(df - 1.0) * dw)
        },
        0.0,
        1.0,
    )?;
    let closed = integrate_fallible(
        |v| Ok(a * v.powf(e) * (1.0 - v).powf(df - 1.0) * reg_inc_beta(v, e, df)?),
        0.0,
        1.0,
    )?;
    Ok(TailConstants {
        large_theta: params.i_tail_const(),
        c0: slope / norm,
        c0_closed: (closed + beta(2.0 * e, 2.0 * df - 1.0)) / norm,
    })
}
