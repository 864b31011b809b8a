//! Scaling functions, path-count entropy and the functional `Φ_t`.

use super::params::{LatticeSite, ModelParams};
use super::special::ln_gamma;
use crate::{Error, Result};

fn check_time(t: f64) -> Result<f64> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::domain(format!("scaling functions need t > 1, got {t}")));
    }
    Ok(t / t.ln())
}

/// `r_t = (t / log t)^{α/(α-d)}`, the spatial scale of the maximizer.
pub fn scale_r(params: &ModelParams, t: f64) -> Result<f64> {
    let s = check_time(t)?;
    Ok(s.powf(params.alpha() / (params.alpha() - params.d() as f64)))
}

/// `a_t = (t / log t)^{d/(α-d)}`, the scale of the potential at the maximizer.
pub fn scale_a(params: &ModelParams, t: f64) -> Result<f64> {
    let s = check_time(t)?;
    Ok(s.powf(params.q()))
}

// ln n! - (n ln n - n + ½ ln 2πn)
fn stirling_remainder(n: f64) -> f64 {
    if n < 16.0 {
        return ln_gamma(n + 1.0) - (n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln());
    }
    let r = 1.0 / n;
    let r2 = r * r;
    r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 / 1680.0)))
}

/// `η(z) = ln(|z|! / ∏ |z_i|!)`, the log of the number of shortest lattice
/// paths from the origin to `z`.
///
/// Evaluated through Stirling's formula written so that the leading terms
/// never cancel: `Σ n_i ln(n/n_i)` plus small corrections. This keeps full
/// relative accuracy even when `|z|` is of order `10^15`.
pub fn eta(site: &LatticeSite) -> f64 {
    let n = site.l1_norm();
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let mut main = 0.0;
    let mut corr = 0.5 * (2.0 * std::f64::consts::PI * nf).ln() + stirling_remainder(nf);
    let mut nonzero = 0;
    for &c in site.coords() {
        let k = c.unsigned_abs();
        if k == 0 {
            continue;
        }
        nonzero += 1;
        if k == n {
            return 0.0;
        }
        let kf = k as f64;
        main += kf * (nf / kf).ln();
        corr -= 0.5 * (2.0 * std::f64::consts::PI * kf).ln() + stirling_remainder(kf);
    }
    debug_assert!(nonzero >= 2);
    (main + corr).max(0.0)
}

/// `Φ_t(z)` given `|z|` and `η(z)`; zero when the gate `t ξ ≥ |z|` fails.
#[inline]
pub fn phi_with_eta(t: f64, l1: u64, xi: f64, eta: f64) -> f64 {
    let n = l1 as f64;
    if t * xi >= n {
        xi - (n * xi.ln() - eta) / t
    } else {
        0.0
    }
}

/// `Φ_t(z) = ξ(z) - (|z|/t) ln ξ(z) + η(z)/t` when `t ξ(z) ≥ |z|`, else `0`.
pub fn phi(params: &ModelParams, t: f64, site: &LatticeSite, xi: f64) -> Result<f64> {
    if site.dim() != params.dim() {
        return Err(Error::domain(format!(
            "site has dimension {}, model has {}",
            site.dim(),
            params.d()
        )));
    }
    if !(xi >= 1.0) {
        return Err(Error::domain(format!("potential value {xi} below the Pareto support")));
    }
    if !(t > 0.0) {
        return Err(Error::domain(format!("Φ_t needs t > 0, got {t}")));
    }
    Ok(phi_with_eta(t, site.l1_norm(), xi, eta(site)))
}

/// Upper bound on `Φ_s(z)` over all `s > 0` for a site with potential `ξ`
/// in dimension `d`: `ξ` if `ξ ≥ d`, otherwise `ξ (1 + ln(d/ξ))`.
///
/// Follows from `η(z) ≤ |z| ln d` and the gate `|z|/s ≤ ξ`.
#[inline]
pub fn optimistic_phi(d: u32, xi: f64) -> f64 {
    let df = d as f64;
    if xi >= df {
        xi
    } else {
        xi * (1.0 + (df / xi).ln())
    }
}
