//! Sparse realization of the Pareto field for large times.
//!
//! At time `t` only sites with `ξ` of order `a_t` at distance of order `r_t`
//! compete for the maximum of `Φ_t`. Enumerating a box of radius `r_t` is out
//! of reach for `t ≳ 10^4`, so the field is split into a dense core
//! `|z| ≤ ρ₀`, whose values come from the same per-site hash as
//! [`PotentialSpec`](super::PotentialSpec), and dyadic shells
//! `ρ₀ 2^j < |z| ≤ ρ₀ 2^{j+1}`. In a shell of `n` sites, the values are
//! revealed from the top down in layers `(u_l, u_{l-1}]` with
//! `u_l = n^{1/α} 2^{-l/α}`: given the `m` sites already revealed, the
//! number of remaining sites above `u_l` is `Binomial(n - m, p)` with the
//! conditional exceedance probability `p`, their positions are uniform among
//! the unrevealed sites and their values follow the Pareto law restricted to
//! the band. Layers are drawn from streams keyed by `(seed, shell, layer)`,
//! so any sequence of queries sees the same field.

use std::collections::HashSet;

use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use super::lattice::{ball_count, for_each_in_ball, sample_in_shell, shell_count};
use super::prf::{site_pareto, stream};
use super::source::{exceedance_threshold, pilot_floor, Candidate, SiteSource};
use crate::analytics::{scale_a, LatticeSite, ModelParams};
use crate::{Error, Result};

const FIELD_TAG: u64 = 0x46_4945_4c44; // "FIELD"
const CORE_SITES: f64 = 65_536.0;
const MAX_RADIUS: u64 = 1 << 60;

/// Default cap on the number of shell sites a field may reveal.
pub const DEFAULT_REVEAL_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug)]
struct Shell {
    r_in: u64,
    r_out: u64,
    n: f64,
    top: f64,
    layers: u32,
    lowest: f64,
    sites: Vec<(LatticeSite, f64)>,
    occupied: HashSet<LatticeSite>,
}

impl Shell {
    fn new(d: usize, alpha: f64, r_in: u64, r_out: u64) -> Self {
        let n = shell_count(d, r_in, r_out);
        Shell {
            r_in,
            r_out,
            n,
            top: n.powf(1.0 / alpha),
            layers: 0,
            lowest: f64::INFINITY,
            sites: Vec::new(),
            occupied: HashSet::new(),
        }
    }

    fn threshold(&self, alpha: f64, layer: u32) -> f64 {
        (self.top * 2f64.powf(-(layer as f64) / alpha)).max(1.0)
    }
}

/// Lazily revealed Pareto field; see the module docs.
#[derive(Clone, Debug)]
pub struct ExceedanceField {
    params: ModelParams,
    seed: u64,
    core_radius: u64,
    core: Vec<(LatticeSite, f64)>,
    shells: Vec<Shell>,
    revealed: usize,
    budget: usize,
}

impl ExceedanceField {
    pub fn new(params: ModelParams, seed: u64) -> Self {
        let d = params.dim();
        let mut core_radius = 1u64;
        while ball_count(d, core_radius * 2) <= CORE_SITES {
            core_radius *= 2;
        }
        let mut core = Vec::with_capacity(ball_count(d, core_radius) as usize);
        for_each_in_ball(d, core_radius, |z| {
            core.push((z, site_pareto(seed, params.alpha(), &z)));
        });
        core.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| b.0.tie_break(&a.0)));
        ExceedanceField {
            params,
            seed,
            core_radius,
            core,
            shells: Vec::new(),
            revealed: 0,
            budget: DEFAULT_REVEAL_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Radius of the densely evaluated core.
    pub fn core_radius(&self) -> u64 {
        self.core_radius
    }

    /// Number of shell sites revealed so far.
    pub fn revealed(&self) -> usize {
        self.revealed
    }

    fn shell_index_for(&self, norm: u64) -> usize {
        debug_assert!(norm > self.core_radius);
        let ratio = (norm - 1) / self.core_radius;
        (63 - ratio.leading_zeros()) as usize
    }

    fn ensure_shell(&mut self, j: usize) -> Result<()> {
        while self.shells.len() <= j {
            let k = self.shells.len() as u32;
            let r_in = self.core_radius << k;
            let r_out = r_in * 2;
            if r_out > MAX_RADIUS {
                return Err(Error::Resource {
                    what: "sparse field radius",
                    needed: r_out as f64,
                    budget: MAX_RADIUS as f64,
                });
            }
            self.shells.push(Shell::new(self.params.dim(), self.params.alpha(), r_in, r_out));
        }
        Ok(())
    }

    /// Reveal shell `j` down to values `> u`.
    fn reveal(&mut self, j: usize, u: f64) -> Result<()> {
        self.ensure_shell(j)?;
        let alpha = self.params.alpha();
        let d = self.params.dim();
        let seed = self.seed;
        loop {
            let shell = &self.shells[j];
            if shell.lowest <= u || shell.lowest <= 1.0 {
                return Ok(());
            }
            let layer = shell.layers;
            let hi = if layer == 0 { f64::INFINITY } else { shell.threshold(alpha, layer - 1) };
            let lo = shell.threshold(alpha, layer);
            let remaining = shell.n - shell.occupied.len() as f64;
            let tail_hi = if hi.is_finite() { hi.powf(-alpha) } else { 0.0 };
            let tail_lo = lo.powf(-alpha);
            let p = ((tail_lo - tail_hi) / (1.0 - tail_hi)).clamp(0.0, 1.0);
            let mean = remaining * p;
            if self.revealed as f64 + mean > self.budget as f64 {
                return Err(Error::Resource {
                    what: "sparse field reveal",
                    needed: self.revealed as f64 + mean,
                    budget: self.budget as f64,
                });
            }
            let mut rng = stream(seed, &[FIELD_TAG, j as u64, layer as u64]);
            let count = if p >= 1.0 {
                remaining as u64
            } else if mean <= 0.0 {
                0
            } else if remaining < 9.0e15 {
                Binomial::new(remaining as u64, p)
                    .expect("valid binomial parameters")
                    .sample(&mut rng)
            } else {
                // n p² below 1e-12 here, so the Poisson law is exact to that order
                Poisson::new(mean).expect("positive mean").sample(&mut rng) as u64
            };
            let shell = &mut self.shells[j];
            for _ in 0..count {
                let z = loop {
                    let z = sample_in_shell(&mut rng, d, shell.r_in, shell.r_out);
                    if !shell.occupied.contains(&z) {
                        break z;
                    }
                };
                let v: f64 = rng.random();
                // inverse CDF of the Pareto law restricted to (lo, hi]
                let x = (tail_lo - v * (tail_lo - tail_hi)).powf(-1.0 / alpha);
                shell.occupied.insert(z);
                shell.sites.push((z, x.max(lo)));
            }
            self.revealed += count as usize;
            shell.layers += 1;
            shell.lowest = lo;
        }
    }
}

impl SiteSource for ExceedanceField {
    fn params(&self) -> &ModelParams {
        &self.params
    }

    fn collect(&mut self, radius: u64, horizon: f64, floor: f64) -> Result<Vec<Candidate>> {
        let mut out = Vec::new();
        let u0 = exceedance_threshold(&self.params, 0.0, horizon, floor);
        for &(z, xi) in &self.core {
            if xi <= u0 {
                break;
            }
            let c = Candidate::new(z, xi);
            if c.sup_phi(0.0, horizon) >= floor {
                out.push(c);
            }
        }
        if radius <= self.core_radius {
            return Ok(out);
        }
        let last = self.shell_index_for(radius.min(MAX_RADIUS));
        for j in 0..=last {
            self.ensure_shell(j)?;
            let r_in = self.shells[j].r_in;
            let u = exceedance_threshold(&self.params, (r_in + 1) as f64, horizon, floor);
            self.reveal(j, u)?;
            for &(z, xi) in &self.shells[j].sites {
                if xi > u {
                    let c = Candidate::new(z, xi);
                    if c.sup_phi(0.0, horizon) >= floor {
                        out.push(c);
                    }
                }
            }
        }
        Ok(out)
    }

    fn initial_floor(&mut self, t: f64, horizon: f64, k: usize) -> f64 {
        let pilot: Vec<Candidate> =
            self.core.iter().take(256).map(|&(z, xi)| Candidate::new(z, xi)).collect();
        let from_core = pilot_floor(&pilot, t, horizon, k);
        let guess = if t > std::f64::consts::E {
            0.25 * scale_a(&self.params, t).unwrap_or(1.0)
        } else {
            f64::NEG_INFINITY
        };
        from_core.max(guess)
    }

    fn xi(&mut self, site: &LatticeSite) -> f64 {
        let n = site.l1_norm();
        if n <= self.core_radius {
            return site_pareto(self.seed, self.params.alpha(), site);
        }
        let j = self.shell_index_for(n);
        if self.ensure_shell(j).is_err() {
            return 1.0;
        }
        // Only the revealed part of the field is known; unrevealed sites
        // lie below the shell's lowest revealed threshold.
        let shell = &self.shells[j];
        shell
            .sites
            .iter()
            .find(|(z, _)| z == site)
            .map(|&(_, v)| v)
            .unwrap_or(1.0)
    }
}
