use serde::Serialize;

use crate::analytics::LatticeSite;

/// A change of the maximizer of `Φ_t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JumpRecord {
    pub tau: f64,
    pub from_site: LatticeSite,
    pub to_site: LatticeSite,
    pub xi_from: f64,
    pub xi_to: f64,
    /// `Φ(Z¹) - Φ(Z²)` at the geometric midpoint of the jump-free stretch
    /// that ends at `tau`.
    pub gap_before: f64,
    /// The new leader was found only when the search box was enlarged, so
    /// the switch time is the rescan time rather than an exact crossing.
    pub escape: bool,
}

/// Residual lifetime at some time, possibly only a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub value: f64,
    pub censored: bool,
}

/// The maximizer path over `[t_start, t_end]`, right-continuous.
#[derive(Clone, Debug, Serialize)]
pub struct TrackedPath {
    pub t_start: f64,
    pub t_end: f64,
    pub initial_leader: LatticeSite,
    pub initial_xi: f64,
    pub jumps: Vec<JumpRecord>,
}

impl TrackedPath {
    /// `Z_t`, with `Z_τ` the new leader at a jump time `τ`.
    pub fn leader_at(&self, t: f64) -> LatticeSite {
        let i = self.jumps.partition_point(|j| j.tau <= t);
        if i == 0 {
            self.initial_leader
        } else {
            self.jumps[i - 1].to_site
        }
    }

    pub fn leader_xi_at(&self, t: f64) -> f64 {
        let i = self.jumps.partition_point(|j| j.tau <= t);
        if i == 0 {
            self.initial_xi
        } else {
            self.jumps[i - 1].xi_to
        }
    }

    /// `R^V(t) = sup{s ≥ 0 : Z_t = Z_{t+s}}`: time to the first jump strictly
    /// after `t`, or `t_end - t` flagged as censored.
    pub fn residual_lifetime(&self, t: f64) -> Residual {
        let i = self.jumps.partition_point(|j| j.tau <= t);
        match self.jumps.get(i) {
            Some(j) => Residual { value: j.tau - t, censored: false },
            None => Residual { value: (self.t_end - t).max(0.0), censored: true },
        }
    }

    /// Leaders in order of appearance.
    pub fn visited(&self) -> Vec<LatticeSite> {
        std::iter::once(self.initial_leader)
            .chain(self.jumps.iter().map(|j| j.to_site))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jump(tau: f64, a: i64, b: i64) -> JumpRecord {
        JumpRecord {
            tau,
            from_site: LatticeSite::new(&[a]),
            to_site: LatticeSite::new(&[b]),
            xi_from: 1.0,
            xi_to: 2.0,
            gap_before: 0.1,
            escape: false,
        }
    }

    #[test]
    fn right_continuous_and_sawtooth() {
        let p = TrackedPath {
            t_start: 1.0,
            t_end: 10.0,
            initial_leader: LatticeSite::new(&[0]),
            initial_xi: 1.5,
            jumps: vec![jump(2.0, 0, 1), jump(5.0, 1, 4)],
        };
        assert_eq!(p.leader_at(1.99), LatticeSite::new(&[0]));
        assert_eq!(p.leader_at(2.0), LatticeSite::new(&[1]));
        assert_eq!(p.residual_lifetime(3.0).value, 2.0);
        assert_eq!(p.residual_lifetime(4.5).value, 0.5);
        assert_eq!(p.residual_lifetime(2.0).value, 3.0);
        let r = p.residual_lifetime(6.0);
        assert!(r.censored && r.value == 4.0);
    }
}
