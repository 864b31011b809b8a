use serde::Serialize;

use crate::analytics::{phi, scale_a, scale_r, LatticeSite, ModelParams};
use crate::potential::Candidate;
use crate::{Error, Result};

/// Time `t*` at which `Φ_t(x) = Φ_t(y)` on the active branches.
///
/// With `A = ξ(x) - ξ(y)` and `B = |x| ln ξ(x) - |y| ln ξ(y) - η(x) + η(y)`,
/// `Φ_t(x) - Φ_t(y) = A - B/t`, so `t* = B/A` when `A ≠ 0` and `B/A > 0`.
pub fn crossing_time(x: &Candidate, y: &Candidate) -> Option<f64> {
    let a = x.xi - y.xi;
    if a == 0.0 {
        return None;
    }
    let t = (x.b - y.b) / a;
    (t > 0.0 && t.is_finite()).then_some(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl Decomposition {
    fn new(lhs: f64, rhs: f64) -> Self {
        Decomposition { lhs, rhs, residual: lhs - rhs }
    }
}

/// The two first-order expansions of `Φ` in rescaled units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecompositionDiagnostics {
    /// `Φ_{t+θt}(z)/a_t` against `Φ_t(z)/a_t + θ/(1+θ) q |z|/r_t`.
    pub time_shift: Decomposition,
    /// `ξ(z)/a_t` against `Φ_t(z)/a_t + q |z|/r_t`.
    pub potential: Decomposition,
}

pub fn decomposition_diagnostics(
    params: &ModelParams,
    t: f64,
    theta: f64,
    site: &LatticeSite,
    xi: f64,
) -> Result<DecompositionDiagnostics> {
    let n = site.l1_norm() as f64;
    if !(theta >= 0.0) {
        return Err(Error::domain(format!("θ must be nonnegative, got {theta}")));
    }
    if t * xi < n || (1.0 + theta) * t * xi < n {
        return Err(Error::domain(format!(
            "gate fails for |z| = {n}, ξ = {xi} at t = {t}"
        )));
    }
    let a = scale_a(params, t)?;
    let r = scale_r(params, t)?;
    let q = params.q();
    let now = phi(params, t, site, xi)? / a;
    let later = phi(params, (1.0 + theta) * t, site, xi)? / a;
    let shift = if theta == 0.0 { 0.0 } else { theta / (1.0 + theta) * q * n / r };
    Ok(DecompositionDiagnostics {
        time_shift: Decomposition::new(later, now + shift),
        potential: Decomposition::new(xi / a, now + q * n / r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_example() {
        let x = Candidate::new(LatticeSite::new(&[1]), 4.0);
        let y = Candidate::new(LatticeSite::new(&[3]), 6.0);
        let t = crossing_time(&x, &y).unwrap();
        assert!((t - 1.994_492_023_282_14).abs() < 1e-12);
        assert!((x.phi(t) - y.phi(t)).abs() < 1e-12);
        let z = Candidate::new(LatticeSite::new(&[-3]), 4.0);
        assert_eq!(crossing_time(&x, &z), None);
    }

    #[test]
    fn trivial_residuals() {
        let p = ModelParams::preset_line();
        let o = LatticeSite::origin(1);
        let d = decomposition_diagnostics(&p, 50.0, 1.0, &o, 7.0).unwrap();
        assert_eq!(d.time_shift.residual, 0.0);
        assert_eq!(d.potential.residual, 0.0);
        let z = LatticeSite::new(&[40]);
        let d = decomposition_diagnostics(&p, 50.0, 0.0, &z, 9.0).unwrap();
        assert_eq!(d.time_shift.residual, 0.0);
        assert!(decomposition_diagnostics(&p, 2.0, 1.0, &z, 9.0).is_err());
    }
}
