use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::lattice::{ball_count, for_each_in_ball};
use super::prf::site_pareto;
use super::source::{pilot_floor, Candidate, SiteSource};
use crate::analytics::{optimistic_phi, LatticeSite, ModelParams};
use crate::{Error, Result};

const PILOT_RADIUS: [u64; 4] = [64, 12, 6, 4];

/// Default cap on the number of sites a dense enumeration may visit.
pub const DEFAULT_SITE_BUDGET: f64 = 6.0e7;

/// An i.i.d. Pareto(α) field on `Z^d`, evaluated lazily from a seed.
///
/// Explicit overrides take precedence; if `default` is set, every site
/// without an override gets that value instead of a random one.
#[derive(Clone, Debug)]
pub struct PotentialSpec {
    params: ModelParams,
    seed: u64,
    overrides: HashMap<LatticeSite, f64>,
    default: Option<f64>,
    site_budget: f64,
}

/// Site with its potential and current `Φ_t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScoredSite {
    pub site: LatticeSite,
    pub xi: f64,
    pub phi: f64,
}

/// On-disk form of a hand-built field.
///
/// ```json
/// {"d": 1, "default": 1.0, "sites": [{"coords": [1], "xi": 4.0}, {"coords": [3], "xi": 6.0}]}
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OverrideFile {
    pub d: u32,
    #[serde(default)]
    pub default: Option<f64>,
    pub sites: Vec<OverrideEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OverrideEntry {
    pub coords: Vec<i64>,
    pub xi: f64,
}

impl PotentialSpec {
    pub fn new(params: ModelParams, seed: u64) -> Self {
        PotentialSpec {
            params,
            seed,
            overrides: HashMap::new(),
            default: None,
            site_budget: DEFAULT_SITE_BUDGET,
        }
    }

    /// A hand-built field: the listed sites take the given values, all others
    /// `default` (or random values if `default` is `None`).
    pub fn with_overrides(
        params: ModelParams,
        seed: u64,
        sites: &[(LatticeSite, f64)],
        default: Option<f64>,
    ) -> Result<Self> {
        let mut spec = Self::new(params, seed);
        if let Some(v) = default {
            check_value(v)?;
        }
        spec.default = default;
        for &(z, v) in sites {
            if z.dim() != params.dim() {
                return Err(Error::Validation(format!(
                    "override site {z} has dimension {}, model has {}",
                    z.dim(),
                    params.d()
                )));
            }
            check_value(v)?;
            spec.overrides.insert(z, v);
        }
        Ok(spec)
    }

    pub fn from_override_file(params: ModelParams, seed: u64, file: &OverrideFile) -> Result<Self> {
        if file.d != params.d() {
            return Err(Error::Validation(format!(
                "override file is for d = {}, model has d = {}",
                file.d,
                params.d()
            )));
        }
        let mut sites = Vec::with_capacity(file.sites.len());
        for e in &file.sites {
            if e.coords.len() != params.dim() {
                return Err(Error::Validation(format!(
                    "override coordinates {:?} do not have length {}",
                    e.coords,
                    params.d()
                )));
            }
            sites.push((LatticeSite::new(&e.coords), e.xi));
        }
        Self::with_overrides(params, seed, &sites, file.default)
    }

    pub fn load_overrides(params: ModelParams, seed: u64, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: OverrideFile = serde_json::from_str(&text)?;
        Self::from_override_file(params, seed, &file)
    }

    pub fn override_file(&self) -> OverrideFile {
        let mut sites: Vec<OverrideEntry> = self
            .overrides
            .iter()
            .map(|(z, &xi)| OverrideEntry { coords: z.coords().to_vec(), xi })
            .collect();
        sites.sort_by(|a, b| a.coords.cmp(&b.coords));
        OverrideFile { d: self.params.d(), default: self.default, sites }
    }

    pub fn has_overrides(&self) -> bool {
        !self.overrides.is_empty() || self.default.is_some()
    }

    pub fn with_site_budget(mut self, budget: f64) -> Self {
        self.site_budget = budget;
        self
    }

    pub fn site_budget(&self) -> f64 {
        self.site_budget
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `ξ(z)`: the override if present, else `U_z^{-1/α}`.
    #[inline]
    pub fn xi(&self, site: &LatticeSite) -> f64 {
        if let Some(&v) = self.overrides.get(site) {
            return v;
        }
        match self.default {
            Some(v) => v,
            None => site_pareto(self.seed, self.params.alpha(), site),
        }
    }

    pub(crate) fn check_box(&self, what: &'static str, radius: u64) -> Result<f64> {
        let n = ball_count(self.params.dim(), radius);
        if n > self.site_budget {
            return Err(Error::Resource { what, needed: n, budget: self.site_budget });
        }
        Ok(n)
    }

    /// The `keep` best sites by `Φ_t` among `|z| ≤ radius`, best first.
    ///
    /// Gated sites (`t ξ < |z|`) are skipped: their `Φ_t` is zero and the
    /// origin always scores `ξ(0) ≥ 1`.
    pub fn scan_candidates(&self, t: f64, radius: u64, keep: usize) -> Result<Vec<ScoredSite>> {
        if keep == 0 {
            return Err(Error::Validation("keep must be at least 1".into()));
        }
        if !(t > 0.0) {
            return Err(Error::domain(format!("scan needs t > 0, got {t}")));
        }
        self.check_box("scan_candidates box", radius)?;
        let d = self.params.d();
        let mut heap: BinaryHeap<Reverse<Ranked>> = BinaryHeap::with_capacity(keep + 1);
        for_each_in_ball(self.params.dim(), radius, |z| {
            let xi = self.xi(&z);
            let n = z.l1_norm() as f64;
            if t * xi < n {
                return;
            }
            if heap.len() == keep {
                let worst = &heap.peek().expect("non-empty").0;
                if optimistic_phi(d, xi) < worst.phi {
                    return;
                }
            }
            let c = Candidate::new(z, xi);
            let r = Ranked { c, phi: c.phi(t) };
            if heap.len() < keep {
                heap.push(Reverse(r));
            } else if r > heap.peek().expect("non-empty").0 {
                heap.pop();
                heap.push(Reverse(r));
            }
        });
        let mut out: Vec<Ranked> = heap.into_iter().map(|r| r.0).collect();
        out.sort_by(|a, b| b.cmp(a));
        Ok(out
            .into_iter()
            .map(|r| ScoredSite { site: r.c.site, xi: r.c.xi, phi: r.phi })
            .collect())
    }
}

fn check_value(v: f64) -> Result<()> {
    if !(v >= 1.0) || !v.is_finite() {
        return Err(Error::Validation(format!(
            "potential value {v} outside the Pareto support [1, ∞)"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct Ranked {
    c: Candidate,
    phi: f64,
}

impl PartialEq for Ranked {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Ranked {}
impl PartialOrd for Ranked {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Ranked {
    fn cmp(&self, o: &Self) -> Ordering {
        self.c.rank(self.phi, &o.c, o.phi)
    }
}

impl SiteSource for PotentialSpec {
    fn params(&self) -> &ModelParams {
        &self.params
    }

    fn collect(&mut self, radius: u64, horizon: f64, floor: f64) -> Result<Vec<Candidate>> {
        self.check_box("tracker search box", radius)?;
        let d = self.params.d();
        let ln_d = (d as f64).ln();
        let mut out = Vec::new();
        for_each_in_ball(self.params.dim(), radius, |z| {
            let xi = self.xi(&z);
            let n = z.l1_norm() as f64;
            if n > horizon * xi {
                return;
            }
            // cheap bound before computing η
            let bound = if xi >= d as f64 {
                xi - n / horizon * (xi.ln() - ln_d)
            } else {
                optimistic_phi(d, xi)
            };
            if bound < floor {
                return;
            }
            let c = Candidate::new(z, xi);
            if c.sup_phi(0.0, horizon) >= floor {
                out.push(c);
            }
        });
        Ok(out)
    }

    fn initial_floor(&mut self, t: f64, horizon: f64, k: usize) -> f64 {
        let mut pilot = Vec::new();
        for_each_in_ball(self.params.dim(), PILOT_RADIUS[self.params.dim() - 1], |z| {
            pilot.push(Candidate::new(z, PotentialSpec::xi(self, &z)));
        });
        pilot_floor(&pilot, t, horizon, k)
    }

    fn xi(&mut self, site: &LatticeSite) -> f64 {
        PotentialSpec::xi(self, site)
    }
}
