//! Event-driven tracking of the maximizer `Z_t` of `Φ_t`.
//!
//! Between rescans the tracker holds a candidate set certified for a time
//! window `[t_scan, H·t_scan]`: every site of the search box that could enter
//! the top `k` during the window. The leader only changes when a candidate's
//! gate opens above it or when `Φ_t(x) - Φ_t(leader) = A - B/t` changes
//! sign, so the next change is found in closed form.

mod diagnostics;
mod path;

use serde::Serialize;

pub use diagnostics::{crossing_time, decomposition_diagnostics, Decomposition, DecompositionDiagnostics};
pub use path::{JumpRecord, Residual, TrackedPath};

use crate::analytics::{scale_a, scale_r, LatticeSite, ModelParams};
use crate::potential::{Candidate, ScoredSite, SiteSource};
use crate::{Error, Result};

/// Search-box and horizon policy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct TrackerConfig {
    /// Number of ranked sites kept certified (leader plus runners-up).
    pub k: usize,
    /// `K` in `radius = K r_h (log h)^{1/(α-d)+ε}`.
    pub radius_factor: f64,
    pub epsilon: f64,
    /// A scan at time `t` is certified up to `H t`.
    pub horizon_factor: f64,
    /// Exponent `β` in the separation threshold `½ a_t (log t)^{-β}`;
    /// `None` means `1 + 1/(α-d) + 0.1`.
    pub beta: Option<f64>,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig { k: 3, radius_factor: 3.0, epsilon: 0.25, horizon_factor: 4.0, beta: None }
    }
}

impl TrackerConfig {
    fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Validation("tracker needs k ≥ 2".into()));
        }
        if !(self.horizon_factor > 1.0) || !(self.radius_factor > 0.0) || !(self.epsilon >= 0.0) {
            return Err(Error::Validation(format!("invalid tracker config {self:?}")));
        }
        Ok(())
    }

    /// Certified search radius for a window ending at `h`.
    pub fn radius(&self, params: &ModelParams, h: f64) -> Result<u64> {
        let expo = 1.0 / (params.alpha() - params.d() as f64) + self.epsilon;
        let r = self.radius_factor * scale_r(params, h)? * h.ln().powf(expo);
        Ok(r.ceil().clamp(self.k as f64, 2f64.powi(62)) as u64)
    }

    pub fn beta(&self, params: &ModelParams) -> f64 {
        self.beta.unwrap_or(1.0 + 1.0 / (params.alpha() - params.d() as f64) + 0.1)
    }
}

/// Snapshot of the tracker at its current time.
#[derive(Clone, Debug, Serialize)]
pub struct TrackerState {
    pub t: f64,
    pub leader: ScoredSite,
    pub runners: Vec<ScoredSite>,
    pub search_radius: u64,
    pub horizon: f64,
}

/// One certified scan.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRecord {
    pub t: f64,
    pub horizon: f64,
    pub radius: u64,
    pub floor: f64,
    pub candidates: usize,
    pub attempts: usize,
}

pub struct Tracker<S: SiteSource> {
    source: S,
    cfg: TrackerConfig,
    t_start: f64,
    t: f64,
    horizon: f64,
    radius: u64,
    candidates: Vec<Candidate>,
    leader: usize,
    initial: Candidate,
    jumps: Vec<JumpRecord>,
    last_event: f64,
    scans: Vec<ScanRecord>,
    escapes: usize,
}

impl<S: SiteSource> Tracker<S> {
    /// Scan at `t0 > 1` and pick the initial leader.
    pub fn new(source: S, t0: f64, cfg: TrackerConfig) -> Result<Self> {
        cfg.validate()?;
        if !(t0 > 1.0) {
            return Err(Error::domain(format!("tracking starts at t > 1, got {t0}")));
        }
        let mut tr = Tracker {
            source,
            cfg,
            t_start: t0,
            t: t0,
            horizon: t0,
            radius: 0,
            candidates: Vec::new(),
            leader: 0,
            initial: Candidate::new(LatticeSite::origin(1), 1.0),
            jumps: Vec::new(),
            last_event: t0,
            scans: Vec::new(),
            escapes: 0,
        };
        tr.rescan()?;
        tr.initial = tr.candidates[tr.leader];
        Ok(tr)
    }

    pub fn params(&self) -> &ModelParams {
        self.source.params()
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn source_mut(&mut self) -> &mut S {
        &mut self.source
    }

    pub fn config(&self) -> &TrackerConfig {
        &self.cfg
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn leader(&self) -> &Candidate {
        &self.candidates[self.leader]
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn jumps(&self) -> &[JumpRecord] {
        &self.jumps
    }

    pub fn scans(&self) -> &[ScanRecord] {
        &self.scans
    }

    /// Leaders found only after a box enlargement.
    pub fn escapes(&self) -> usize {
        self.escapes
    }

    pub fn search_radius(&self) -> u64 {
        self.radius
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    fn ranked_at(&self, t: f64) -> Vec<(usize, f64)> {
        let mut v: Vec<(usize, f64)> =
            self.candidates.iter().enumerate().map(|(i, c)| (i, c.phi(t))).collect();
        v.sort_by(|a, b| {
            self.candidates[b.0].rank(b.1, &self.candidates[a.0], a.1)
        });
        v
    }

    fn rescan(&mut self) -> Result<()> {
        let params = *self.source.params();
        let t = self.t;
        let h = self.cfg.horizon_factor * t;
        let radius = self.cfg.radius(&params, h)?;
        let k = self.cfg.k;
        let mut floor = self.source.initial_floor(t, h, k);
        let mut attempts = 0;
        let (cands, certified) = loop {
            attempts += 1;
            let cands = self.source.collect(radius, h, floor)?;
            let mut lows: Vec<(f64, f64)> =
                cands.iter().map(|c| (c.phi(t), c.phi(t).min(c.phi(h)))).collect();
            lows.sort_by(|a, b| b.0.total_cmp(&a.0));
            if lows.len() >= k {
                let f = lows[..k].iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
                if f >= floor {
                    break (cands, f);
                }
                // a far site not yet reached can sit among the top k with Φ_t < 0;
                // dropping straight to f would reveal most of the ball
                floor = if floor > 1.0 { f.max(0.5 * floor) } else { f };
            } else if floor == f64::NEG_INFINITY {
                if cands.is_empty() {
                    return Err(Error::Certification("search box holds no active site".into()));
                }
                break (cands, f64::NEG_INFINITY);
            } else if floor.is_finite() && floor > 1.0 {
                floor *= 0.5;
            } else {
                floor = f64::NEG_INFINITY;
            }
            if attempts > 200 {
                return Err(Error::Certification(format!("no certified floor at t = {t}")));
            }
        };
        let previous = (!self.candidates.is_empty()).then(|| self.candidates[self.leader]);
        self.candidates = cands.into_iter().filter(|c| c.sup_phi(t, h) >= certified).collect();
        let best = self.ranked_at(t)[0].0;
        self.leader = best;
        if let Some(prev) = previous {
            let new = self.candidates[best];
            if new.site != prev.site {
                self.escapes += 1;
                self.jumps.push(JumpRecord {
                    tau: t,
                    from_site: prev.site,
                    to_site: new.site,
                    xi_from: prev.xi,
                    xi_to: new.xi,
                    gap_before: f64::NAN,
                    escape: true,
                });
                self.last_event = t;
            }
        }
        self.radius = radius;
        self.horizon = h;
        self.scans.push(ScanRecord {
            t,
            horizon: h,
            radius,
            floor: certified,
            candidates: self.candidates.len(),
            attempts,
        });
        Ok(())
    }

    /// Earliest time `≥ t` at which `c` becomes the right-limit leader.
    ///
    /// An active challenger overtakes only through the sign change of
    /// `A - B/s`, which needs `A > 0`; deciding by the sign of `A - B/t` at
    /// the current time would let rounding at a crossing undo the jump.
    fn overtake(c: &Candidate, l: &Candidate, t: f64) -> Option<f64> {
        let a = c.xi - l.xi;
        let b = c.b - l.b;
        let act = c.activation();
        if act > t {
            let f = a - b / act;
            if f > 0.0 || (f == 0.0 && a > 0.0) {
                return Some(act);
            }
            return (a > 0.0 && b / a > act).then(|| b / a);
        }
        (a > 0.0).then(|| (b / a).max(t))
    }

    fn next_event(&self) -> Option<(f64, usize)> {
        let l = &self.candidates[self.leader];
        let mut best: Option<(f64, usize)> = None;
        for (i, c) in self.candidates.iter().enumerate() {
            if i == self.leader {
                continue;
            }
            if let Some(s) = Self::overtake(c, l, self.t) {
                best = match best {
                    None => Some((s, i)),
                    Some((s0, i0)) => {
                        if s < s0 || (s == s0 && c.xi > self.candidates[i0].xi) {
                            Some((s, i))
                        } else {
                            best
                        }
                    }
                };
            }
        }
        best
    }

    fn gap_at(&self, t: f64) -> f64 {
        let v = self.ranked_at(t);
        if v.len() < 2 {
            return f64::INFINITY;
        }
        v[0].1 - v[1].1
    }

    /// Move to the first leader change in `(t, t_max]`, or to `t_max`.
    pub fn next_jump(&mut self, t_max: f64) -> Result<Option<JumpRecord>> {
        let before = self.jumps.len();
        while self.t < t_max && self.jumps.len() == before {
            if self.t >= self.horizon {
                self.rescan()?;
                if self.jumps.len() > before {
                    break;
                }
            }
            let seg_end = t_max.min(self.horizon);
            match self.next_event() {
                Some((s, i)) if s <= seg_end => {
                    let from = self.candidates[self.leader];
                    let to = self.candidates[i];
                    let mid = (self.last_event * s).sqrt();
                    let gap_before = self.gap_at(mid);
                    self.jumps.push(JumpRecord {
                        tau: s,
                        from_site: from.site,
                        to_site: to.site,
                        xi_from: from.xi,
                        xi_to: to.xi,
                        gap_before,
                        escape: false,
                    });
                    self.leader = i;
                    self.t = s.max(self.t);
                    self.last_event = self.t;
                }
                _ => self.t = seg_end,
            }
        }
        Ok(self.jumps.get(before).copied())
    }

    /// Advance to `t_target`, returning the jumps in `(t, t_target]`.
    pub fn advance(&mut self, t_target: f64) -> Result<Vec<JumpRecord>> {
        if !(t_target >= self.t) {
            return Err(Error::domain(format!(
                "cannot advance backwards from {} to {t_target}",
                self.t
            )));
        }
        let before = self.jumps.len();
        while self.t < t_target {
            self.next_jump(t_target)?;
        }
        Ok(self.jumps[before..].to_vec())
    }

    pub fn state(&self) -> TrackerState {
        let v = self.ranked_at(self.t);
        let scored = |&(i, p): &(usize, f64)| {
            let c = &self.candidates[i];
            ScoredSite { site: c.site, xi: c.xi, phi: p }
        };
        let leader_phi = self.candidates[self.leader].phi(self.t);
        let leader = ScoredSite {
            site: self.candidates[self.leader].site,
            xi: self.candidates[self.leader].xi,
            phi: leader_phi,
        };
        let runners = v
            .iter()
            .filter(|(i, _)| *i != self.leader)
            .take(self.cfg.k - 1)
            .map(scored)
            .collect();
        TrackerState { t: self.t, leader, runners, search_radius: self.radius, horizon: self.horizon }
    }

    /// `(Φ(Z¹) - Φ(Z²), ½ a_t (log t)^{-β})` at the current time.
    pub fn separation_gap(&self) -> Result<(f64, f64)> {
        let st = self.state();
        let second = st
            .runners
            .first()
            .ok_or_else(|| Error::Validation("separation gap needs a runner-up".into()))?;
        let params = self.source.params();
        let thr = 0.5 * scale_a(params, self.t)? * self.t.ln().powf(-self.cfg.beta(params));
        Ok((st.leader.phi - second.phi, thr))
    }

    /// The path tracked so far.
    pub fn path(&self) -> TrackedPath {
        TrackedPath {
            t_start: self.t_start,
            t_end: self.t,
            initial_leader: self.initial.site,
            initial_xi: self.initial.xi,
            jumps: self.jumps.clone(),
        }
    }
}
