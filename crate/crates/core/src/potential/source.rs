use serde::Serialize;

use crate::analytics::{eta, phi_with_eta, LatticeSite, ModelParams};
use crate::Result;

/// A site with its potential and the quantities `Φ_t` needs, so that
/// `Φ_t(z) = ξ - b/t` on the active branch with `b = |z| ln ξ - η(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub site: LatticeSite,
    pub xi: f64,
    pub eta: f64,
    pub b: f64,
}

impl Candidate {
    pub fn new(site: LatticeSite, xi: f64) -> Self {
        let eta = eta(&site);
        let b = site.l1_norm() as f64 * xi.ln() - eta;
        Candidate { site, xi, eta, b }
    }

    /// Time `|z| / ξ` at which the gate `t ξ ≥ |z|` opens.
    #[inline]
    pub fn activation(&self) -> f64 {
        self.site.l1_norm() as f64 / self.xi
    }

    #[inline]
    pub fn phi(&self, t: f64) -> f64 {
        phi_with_eta(t, self.site.l1_norm(), self.xi, self.eta)
    }

    /// `Φ_s` on the active branch, ignoring the gate.
    #[inline]
    pub fn phi_active(&self, t: f64) -> f64 {
        self.xi - self.b / t
    }

    /// `sup_{s ∈ [t0, h]} Φ_s(z)`. On the active branch `s ↦ ξ - b/s` is
    /// monotone, so the supremum sits at one of the two ends.
    pub fn sup_phi(&self, t0: f64, h: f64) -> f64 {
        let s0 = t0.max(self.activation());
        if s0 > h {
            return 0.0;
        }
        self.phi_active(s0).max(self.phi_active(h)).max(0.0)
    }

    /// Ranking used everywhere: larger `Φ`, then larger ℓ¹ norm, then
    /// lexicographically smaller coordinates. `Greater` means `self` ranks first.
    pub fn rank(&self, phi_self: f64, other: &Self, phi_other: f64) -> std::cmp::Ordering {
        phi_self
            .total_cmp(&phi_other)
            .then_with(|| self.site.tie_break(&other.site))
    }
}

/// Smallest `x` such that every site with `|z| ≥ rho` and `ξ ≤ x` satisfies
/// `Φ_s(z) ≤ floor` for all `s ≤ horizon`. Returns `1` (the whole support)
/// when `floor < d`.
///
/// Uses `η ≤ |z| ln d`, which gives `Φ_s ≤ ξ - (ρ/h)(ln ξ - ln d)` for
/// `ξ ≥ d`, and the gate, which forces `ξ ≥ ρ/h`.
pub fn exceedance_threshold(params: &ModelParams, rho: f64, horizon: f64, floor: f64) -> f64 {
    let d = params.d() as f64;
    if floor < d {
        return 1.0;
    }
    let c = rho / horizon;
    let g = |x: f64| x - c * (x.ln() - d.ln());
    let mut lo = d.max(c);
    if g(lo) >= floor {
        return lo;
    }
    let mut hi = (2.0 * lo).max(floor);
    while g(hi) < floor {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < floor {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `k`-th largest of `min(Φ_t, Φ_h)` over `cands`: a level that at least `k`
/// of them stay above throughout `[t, h]`.
pub fn pilot_floor(cands: &[Candidate], t: f64, h: f64, k: usize) -> f64 {
    let mut lows: Vec<f64> = cands.iter().map(|c| c.phi(t).min(c.phi(h))).collect();
    if lows.len() < k || k == 0 {
        return f64::NEG_INFINITY;
    }
    lows.sort_by(|a, b| b.total_cmp(a));
    lows[k - 1]
}

/// A potential field that can hand the tracker every site that might matter.
pub trait SiteSource {
    fn params(&self) -> &ModelParams;

    /// Every site with `|z| ≤ radius` whose `Φ_s` reaches `floor` for some
    /// `s ≤ horizon` (sites beyond `radius` may be included too).
    fn collect(&mut self, radius: u64, horizon: f64, floor: f64) -> Result<Vec<Candidate>>;

    /// First guess for the floor when scanning at time `t` for the best `k`
    /// sites over `[t, horizon]`. Too high a guess only costs a rescan.
    fn initial_floor(&mut self, t: f64, horizon: f64, k: usize) -> f64;

    /// Potential value at one site.
    fn xi(&mut self, site: &LatticeSite) -> f64;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_is_conservative() {
        for &(d, alpha) in &[(1u32, 2.0), (2, 4.0), (3, 5.5)] {
            let p = ModelParams::new(d, alpha).unwrap();
            for &(rho, h, floor) in &[(100.0, 10.0, 5.0), (1e6, 50.0, 30.0), (3.0, 2.0, 3.5)] {
                let x = exceedance_threshold(&p, rho, h, floor);
                // sites just below the threshold at radius rho can never reach the floor
                let r = rho.ceil() as i64;
                let mut coords = vec![0i64; d as usize];
                coords[0] = r;
                let c = Candidate::new(LatticeSite::new(&coords), x * (1.0 - 1e-12));
                assert!(c.sup_phi(0.0, h) <= floor + 1e-9, "{d} {rho} {h} {floor}");
            }
        }
    }

    #[test]
    fn sup_phi_matches_dense_scan() {
        let c = Candidate::new(LatticeSite::new(&[2, 1]), 1.5);
        let mut best: f64 = 0.0;
        for k in 0..=10_000 {
            let s = 0.5 + k as f64 * (6.0 - 0.5) / 10_000.0;
            best = best.max(c.phi(s));
        }
        assert!((c.sup_phi(0.5, 6.0) - best).abs() < 1e-9);
    }
}
