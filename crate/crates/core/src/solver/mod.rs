//! The lattice Cauchy problem `∂u/∂t = Δu + ξu`, `u(0,·) = δ₀`.
//!
//! `u` grows superexponentially, so the solver carries the profile
//! `v = u/U` and `log U` separately. Each step applies classical RK4 to the
//! linear system `w' = (Δ + ξ)w` on a cube with zero boundary values,
//! starting from `w = v`, then sets `log U += ln Σw` and `v = w/Σw`. This is
//! the normalized flow `v' = (Δ + ξ)v - λv` with `λ = Σ (Δ + ξ)v`, where the
//! boundary term of `ΣΔv` is exactly the mass leaking out of the box.

mod lattice_box;
mod series;

use serde::{Deserialize, Serialize};

use lattice_box::CubeBox;
pub use series::{residual_lifetime_x, solve, Observation, SolveOutput};

use crate::analytics::LatticeSite;
use crate::potential::PotentialSpec;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Nominal step `dt_factor / (max ξ + 4d)`.
    pub dt_factor: f64,
    /// First step `start_factor / (max ξ + 4d)`, doubled until nominal.
    pub start_factor: f64,
    /// Steps above `stability_factor / (max ξ + 4d)` are rejected.
    pub stability_factor: f64,
    pub initial_radius: u64,
    /// Boundary outflow rate (per unit mass and time) that triggers growth.
    pub leak_tol: f64,
    pub grow: bool,
    pub site_budget: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            dt_factor: 0.01,
            start_factor: 1e-3,
            stability_factor: 1.0,
            initial_radius: 8,
            leak_tol: 1e-18,
            grow: true,
            site_budget: 4_000_000,
        }
    }
}

/// Normalized profile on a cube plus the accumulated `log U(t)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProfileState {
    pub t: f64,
    pub d: usize,
    pub box_radius: u64,
    pub v: Vec<f64>,
    pub log_mass: f64,
    /// Outflow rate through the box boundary, `Σ_z v(z)·#(outside neighbours)`.
    pub boundary_leak: f64,
}

fn cube_index(d: usize, radius: u64, z: &LatticeSite) -> Option<usize> {
    let r = radius as i64;
    let side = 2 * radius as usize + 1;
    let mut idx = 0usize;
    if z.dim() != d {
        return None;
    }
    for &c in z.coords() {
        if c.abs() > r {
            return None;
        }
        idx = idx * side + (c + r) as usize;
    }
    Some(idx)
}

fn cube_site(d: usize, radius: u64, mut idx: usize) -> LatticeSite {
    let side = 2 * radius as usize + 1;
    let mut c = vec![0i64; d];
    for k in (0..d).rev() {
        c[k] = (idx % side) as i64 - radius as i64;
        idx /= side;
    }
    LatticeSite::new(&c)
}

impl ProfileState {
    /// `δ₀` on the cube of the given radius at time zero.
    pub fn point_mass(d: usize, radius: u64) -> Self {
        let n = (2 * radius as usize + 1).pow(d as u32);
        let mut v = vec![0.0; n];
        v[cube_index(d, radius, &LatticeSite::origin(d)).expect("origin in box")] = 1.0;
        ProfileState { t: 0.0, d, box_radius: radius, v, log_mass: 0.0, boundary_leak: 0.0 }
    }

    pub fn value(&self, z: &LatticeSite) -> f64 {
        cube_index(self.d, self.box_radius, z).map_or(0.0, |i| self.v[i])
    }

    pub fn site(&self, idx: usize) -> LatticeSite {
        cube_site(self.d, self.box_radius, idx)
    }

    /// `X_t` and `v(t, X_t)`; ties go to the larger ℓ¹ norm, then the
    /// lexicographically smaller site.
    pub fn peak(&self) -> (LatticeSite, f64) {
        let mut best = 0usize;
        let mut best_site = self.site(0);
        for i in 1..self.v.len() {
            if self.v[i] > self.v[best] {
                best = i;
                best_site = self.site(i);
            } else if self.v[i] == self.v[best] {
                let z = self.site(i);
                if z.tie_break(&best_site) == std::cmp::Ordering::Greater {
                    best = i;
                    best_site = z;
                }
            }
        }
        (best_site, self.v[best])
    }

    /// `sup_z |v(z) - other(z)|` over the union of the two boxes.
    pub fn sup_diff(&self, other: &ProfileState) -> f64 {
        let (big, small) = if self.box_radius >= other.box_radius { (self, other) } else { (other, self) };
        let mut m: f64 = 0.0;
        for (i, &x) in big.v.iter().enumerate() {
            let y = if small.box_radius == big.box_radius {
                small.v[i]
            } else {
                small.value(&big.site(i))
            };
            m = m.max((x - y).abs());
        }
        m
    }
}

/// Counters accumulated over a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct SolverStats {
    pub steps: u64,
    /// Negative entries set to zero after a step.
    pub clamps: u64,
    /// Clamped entries that were below `-1e-12`.
    pub large_negatives: u64,
    /// Largest `|Σv - 1|` seen after renormalization.
    pub max_mass_drift: f64,
    pub growths: u32,
    pub max_leak: f64,
}

fn rk4_into(cube: &CubeBox, xi: &[f64], v: &[f64], dt: f64, bufs: &mut [Vec<f64>; 5]) {
    let [k1, k2, k3, k4, tmp] = bufs;
    cube.apply(xi, v, k1);
    for i in 0..v.len() {
        tmp[i] = v[i] + 0.5 * dt * k1[i];
    }
    cube.apply(xi, tmp, k2);
    for i in 0..v.len() {
        tmp[i] = v[i] + 0.5 * dt * k2[i];
    }
    cube.apply(xi, tmp, k3);
    for i in 0..v.len() {
        tmp[i] = v[i] + dt * k3[i];
    }
    cube.apply(xi, tmp, k4);
    for i in 0..v.len() {
        tmp[i] = v[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

fn renormalize(
    cube: &CubeBox,
    state: &mut ProfileState,
    w: &[f64],
    dt: f64,
    stats: &mut SolverStats,
) -> Result<()> {
    let mut sum = 0.0;
    for &x in w {
        if x > 0.0 {
            sum += x;
        }
    }
    if !(sum > 0.0) || !sum.is_finite() {
        return Err(Error::Stability { dt, bound: f64::NAN });
    }
    let inv = 1.0 / sum;
    let mut leak = 0.0;
    let mut check = 0.0;
    for (i, (dst, &x)) in state.v.iter_mut().zip(w).enumerate() {
        let mut y = x * inv;
        if y < 0.0 {
            stats.clamps += 1;
            if y < -1e-12 {
                stats.large_negatives += 1;
            }
            y = 0.0;
        }
        *dst = y;
        check += y;
        leak += y * cube.outside[i] as f64;
    }
    state.log_mass += sum.ln();
    state.t += dt;
    state.boundary_leak = leak;
    stats.steps += 1;
    stats.max_mass_drift = stats.max_mass_drift.max((check - 1.0).abs());
    stats.max_leak = stats.max_leak.max(leak);
    Ok(())
}

fn stability_bound(xi_max: f64, d: usize, factor: f64) -> f64 {
    factor / (xi_max + 4.0 * d as f64)
}

/// One explicit RK4 step of length `dt` on the state's box.
pub fn step(state: &ProfileState, field: &PotentialSpec, dt: f64) -> Result<ProfileState> {
    let cube = CubeBox::new(state.d, state.box_radius);
    let xi: Vec<f64> = cube.sites.iter().map(|z| field.xi(z)).collect();
    let xi_max = xi.iter().cloned().fold(1.0, f64::max);
    let bound = stability_bound(xi_max, state.d, SolverConfig::default().stability_factor);
    if !(dt > 0.0) || dt > bound {
        return Err(Error::Stability { dt, bound });
    }
    let n = cube.len();
    let mut bufs = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    rk4_into(&cube, &xi, &state.v, dt, &mut bufs);
    let mut next = state.clone();
    let mut stats = SolverStats::default();
    renormalize(&cube, &mut next, &bufs[4], dt, &mut stats)?;
    Ok(next)
}

/// Integrator holding the box, the cached potential and work buffers.
#[derive(Clone)]
pub struct Solver<'a> {
    field: &'a PotentialSpec,
    cfg: SolverConfig,
    cube: CubeBox,
    xi: Vec<f64>,
    xi_max: f64,
    state: ProfileState,
    bufs: [Vec<f64>; 5],
    dt: f64,
    stats: SolverStats,
}

impl<'a> Solver<'a> {
    pub fn new(field: &'a PotentialSpec, cfg: SolverConfig) -> Result<Self> {
        let d = field.params().dim();
        let state = ProfileState::point_mass(d, cfg.initial_radius);
        let mut s = Solver {
            field,
            cfg,
            cube: CubeBox::new(d, cfg.initial_radius),
            xi: Vec::new(),
            xi_max: 1.0,
            state,
            bufs: Default::default(),
            dt: 0.0,
            stats: SolverStats::default(),
        };
        s.check_budget(cfg.initial_radius)?;
        s.load_box();
        s.dt = cfg.start_factor / (s.xi_max + 4.0 * d as f64);
        Ok(s)
    }

    fn check_budget(&self, radius: u64) -> Result<()> {
        let n = (2.0 * radius as f64 + 1.0).powi(self.state.d as i32);
        if n > self.cfg.site_budget as f64 {
            return Err(Error::Resource {
                what: "solver box",
                needed: n,
                budget: self.cfg.site_budget as f64,
            });
        }
        Ok(())
    }

    fn load_box(&mut self) {
        self.xi = self.cube.sites.iter().map(|z| self.field.xi(z)).collect();
        self.xi_max = self.xi.iter().cloned().fold(1.0, f64::max);
        let n = self.cube.len();
        self.bufs = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    }

    fn grow(&mut self) -> Result<()> {
        let r = self.state.box_radius * 2;
        self.check_budget(r)?;
        let d = self.state.d;
        let cube = CubeBox::new(d, r);
        let mut v = vec![0.0; cube.len()];
        for (i, &x) in self.state.v.iter().enumerate() {
            if x != 0.0 {
                let z = self.cube.sites[i];
                v[cube.index_of(&z).expect("old box inside new box")] = x;
            }
        }
        self.cube = cube;
        self.state.v = v;
        self.state.box_radius = r;
        self.load_box();
        self.stats.growths += 1;
        Ok(())
    }

    pub fn state(&self) -> &ProfileState {
        &self.state
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }

    /// Nominal step on the current box.
    pub fn nominal_dt(&self) -> f64 {
        stability_bound(self.xi_max, self.state.d, self.cfg.dt_factor)
    }

    /// Integrate up to exactly `t`.
    pub fn advance_to(&mut self, t: f64) -> Result<()> {
        if t < self.state.t {
            return Err(Error::domain(format!(
                "solver cannot go back from {} to {t}",
                self.state.t
            )));
        }
        let bound = stability_bound(self.xi_max, self.state.d, self.cfg.stability_factor);
        if self.cfg.dt_factor > self.cfg.stability_factor {
            return Err(Error::Stability { dt: self.nominal_dt(), bound });
        }
        while self.state.t < t {
            let nominal = self.nominal_dt();
            self.dt = self.dt.min(nominal);
            let remaining = t - self.state.t;
            let h = if remaining <= self.dt * (1.0 + 1e-9) { remaining } else { self.dt };
            rk4_into(&self.cube, &self.xi, &self.state.v, h, &mut self.bufs);
            let w = std::mem::take(&mut self.bufs[4]);
            renormalize(&self.cube, &mut self.state, &w, h, &mut self.stats)?;
            self.bufs[4] = w;
            if remaining <= self.dt * (1.0 + 1e-9) {
                self.state.t = t;
            }
            self.dt = (self.dt * 2.0).min(self.nominal_dt());
            if self.cfg.grow && self.state.boundary_leak > self.cfg.leak_tol {
                self.grow()?;
            }
        }
        Ok(())
    }

    pub fn peak(&self) -> (LatticeSite, f64) {
        self.state.peak()
    }
}
