//! Closed-form `ν` masses and the truncation bound of a windowed pattern.

use super::cone::cone_argmax;
use super::pattern::{l1_volume, sample_pattern, PointPattern, Window};
use crate::analytics::quadrature::integrate;
use crate::analytics::{inv_phi_weight, ModelParams};
use crate::{Error, Result};

const ABS_TOL: f64 = 1e-16;
const REL_TOL: f64 = 1e-11;

/// `ν(D_θ(r, y)) = ϑ y^{d-α} / φ_θ(v)` with `v = y/(y+qr)`: the mass of the
/// points that are above `(r, y)` at time 1 or at time `1+θ`.
pub fn nu_region_mass(params: &ModelParams, theta: f64, r: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain(format!("ν-mass needs y > 0, got {y}")));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("ν-mass needs r ≥ 0, got {r}")));
    }
    let df = params.d() as f64;
    let v = y / (y + params.q() * r);
    Ok(params.theta_const() * y.powf(df - params.alpha()) * inv_phi_weight(params, theta, v)?)
}

/// `∫_R^∞ r^{d-1} (a + b r)^{-α} dr` for `a, b > 0`.
///
/// With `v = a/(a+br)` this is `a^{d-α} b^{-d} ∫_0^{v₀} v^{α-d-1}(1-v)^{d-1} dv`,
/// and `z = v^{α-d}` removes the endpoint singularity.
pub fn radial_tail(params: &ModelParams, a: f64, b: f64, r0: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && r0 >= 0.0) {
        return Err(Error::domain(format!("radial tail needs a, b > 0 and R ≥ 0, got {a}, {b}, {r0}")));
    }
    let df = params.d() as f64;
    let e = params.alpha() - df;
    let v0 = a / (a + b * r0);
    let zmax = v0.powf(e);
    let inner = if params.d() == 1 {
        zmax / e
    } else {
        integrate(|z| (1.0 - z.powf(1.0 / e)).powf(df - 1.0) / e, 0.0, zmax, ABS_TOL, REL_TOL)?.value
    };
    Ok(a.powf(-e) * b.powf(-df) * inner)
}

/// `ν` of `{w > s + c|x|}` minus `window`.
pub fn excluded_mass(params: &ModelParams, window: &Window, s: f64, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::domain(format!("cone slope must be positive, got {c}")));
    }
    if !(s > 0.0) {
        // the region reaches down to w = 0 where ν has infinite mass
        return Ok(f64::INFINITY);
    }
    let df = params.d() as f64;
    let a = params.alpha();
    let sf = params.l1_surface_factor();
    match *window {
        Window::Rect { l, u_min } => {
            let mut total = sf * radial_tail(params, s, c, l)?;
            if s < u_min {
                let rb = ((u_min - s) / c).min(l);
                let cap = u_min.powf(-a);
                let inner = integrate(
                    |r| r.powf(df - 1.0) * ((s + c * r).powf(-a) - cap).max(0.0),
                    0.0,
                    rb,
                    ABS_TOL,
                    REL_TOL,
                )?;
                total += sf * inner.value;
            }
            Ok(total)
        }
        Window::Cone { m, kappa } => {
            // the region is nonempty where s + c r < m + κ r
            let f0 = m - s;
            let slope = kappa - c;
            if f0 <= 0.0 && slope <= 0.0 {
                return Ok(0.0);
            }
            if slope >= 0.0 {
                let ra = if f0 >= 0.0 { 0.0 } else { -f0 / slope };
                let v = radial_tail(params, s, c, ra)? - radial_tail(params, m, kappa, ra)?;
                return Ok(sf * v.max(0.0));
            }
            let rb = f0 / -slope;
            let inner = integrate(
                |r| r.powf(df - 1.0) * ((s + c * r).powf(-a) - (m + kappa * r).powf(-a)).max(0.0),
                0.0,
                rb,
                ABS_TOL,
                REL_TOL,
            )?;
            Ok(sf * inner.value)
        }
    }
}

/// Mass of the excluded points that could beat the realized tip at `t_lo`
/// somewhere in `[t_lo, t_hi]`. The pattern's sweep is exact with
/// probability at least `1 - bound`.
pub fn truncation_bound(
    params: &ModelParams,
    pattern: &PointPattern,
    window: &Window,
    t_lo: f64,
    t_hi: f64,
) -> Result<f64> {
    if !(t_lo > 0.0 && t_lo <= t_hi) {
        return Err(Error::domain(format!("bad time range [{t_lo}, {t_hi}]")));
    }
    if pattern.is_empty() {
        return Ok(f64::INFINITY);
    }
    let (_, s) = cone_argmax(pattern, t_lo)?;
    excluded_mass(params, window, s, params.q() / t_hi)
}

/// Initial cone height of [`sample_adaptive`].
pub const DEFAULT_CONE_M: f64 = 1.0;

/// Sample on the cone window for `t_hi` and enlarge until the truncation
/// bound drops below `tol`. Returns the pattern and its final bound.
pub fn sample_adaptive(
    params: &ModelParams,
    t_lo: f64,
    t_hi: f64,
    seed: u64,
    tol: f64,
) -> Result<(PointPattern, f64)> {
    let window = Window::for_range(params, DEFAULT_CONE_M, t_hi)?;
    let mut pat = sample_pattern(params, window, seed)?;
    loop {
        let b = truncation_bound(params, &pat, &pat.window, t_lo, t_hi)?;
        if b < tol {
            return Ok((pat, b));
        }
        pat.enlarge()?;
    }
}

/// `Vol{|x|₁ ≤ l}` for the model dimension.
pub fn window_volume(params: &ModelParams, l: f64) -> f64 {
    l1_volume(params.d() as f64, l)
}
