//! Sampling `Π` restricted to a window.
//!
//! Points are parametrized by `x ∈ R^d` and the vertical distance to the
//! boundary `w = y + q|x|`. In `(x, w)` the intensity is
//! `dx ⊗ α w^{-α-1} dw`, so the `w`-marginal is exactly Pareto.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Exp1, Poisson};
use serde::{Deserialize, Serialize};

use crate::analytics::{beta, ln_gamma, ModelParams};
use crate::potential::prf;
use crate::{Error, Result};

/// Domain tag for pattern streams (`"PI"`).
const PATTERN_TAG: u64 = 0x5049;

/// Enlargements allowed before giving up.
pub const MAX_LEVEL: u32 = 64;

/// The part of `{(x, w) : w > 0}` that a pattern covers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    /// `|x| ≤ l` and `w ≥ u_min`.
    Rect { l: f64, u_min: f64 },
    /// `w ≥ m + κ|x|`. With `κ = q/t_hi` this is the smallest region that
    /// can hold a point winning somewhere in `[t_lo, t_hi]`.
    Cone { m: f64, kappa: f64 },
}

impl Window {
    pub fn rect(l: f64, u_min: f64) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) || !(u_min > 0.0 && u_min.is_finite()) {
            return Err(Error::domain(format!("window needs L > 0 and u_min > 0, got {l}, {u_min}")));
        }
        Ok(Window::Rect { l, u_min })
    }

    pub fn cone(m: f64, kappa: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) || !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::domain(format!("cone window needs m > 0 and κ > 0, got {m}, {kappa}")));
        }
        Ok(Window::Cone { m, kappa })
    }

    /// The cone window for sweeps ending at `t_hi`.
    pub fn for_range(params: &ModelParams, m: f64, t_hi: f64) -> Result<Self> {
        if !(t_hi > 0.0) {
            return Err(Error::domain(format!("t_hi must be positive, got {t_hi}")));
        }
        Window::cone(m, params.q() / t_hi)
    }

    pub fn contains(&self, norm: f64, w: f64) -> bool {
        match *self {
            Window::Rect { l, u_min } => norm <= l && w >= u_min,
            Window::Cone { m, kappa } => w >= m + kappa * norm,
        }
    }

    /// `ν` of the window.
    pub fn mass(&self, params: &ModelParams) -> f64 {
        let df = params.d() as f64;
        let a = params.alpha();
        match *self {
            Window::Rect { l, u_min } => l1_volume(df, l) * u_min.powf(-a),
            Window::Cone { m, kappa } => {
                params.l1_surface_factor() * beta(a - df, df) * m.powf(df - a) * kappa.powf(-df)
            }
        }
    }

    /// The next window in the nested sequence.
    pub fn enlarged(&self) -> Self {
        match *self {
            Window::Rect { l, u_min } => Window::Rect { l: 2.0 * l, u_min: 0.5 * u_min },
            Window::Cone { m, kappa } => Window::Cone { m: 0.5 * m, kappa },
        }
    }
}

/// `Vol{|x|₁ ≤ l} = 2^d l^d / d!`.
pub(crate) fn l1_volume(df: f64, l: f64) -> f64 {
    (df * (2.0 * l).ln() - ln_gamma(df + 1.0)).exp()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: Vec<f64>,
    pub y: f64,
    /// `|x|₁`, cached.
    pub norm: f64,
}

impl Point {
    pub fn new(x: Vec<f64>, y: f64) -> Self {
        let norm = x.iter().map(|c| c.abs()).sum();
        Point { x, y, norm }
    }

    /// `y + q|x|`.
    pub fn w(&self, q: f64) -> f64 {
        self.y + q * self.norm
    }

    /// The cone score `y + q(1 - 1/t)|x|`.
    pub fn score(&self, q: f64, t: f64) -> f64 {
        self.y + q * (1.0 - 1.0 / t) * self.norm
    }
}

/// A realization of `Π` restricted to `window`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointPattern {
    pub params: ModelParams,
    pub window: Window,
    pub seed: u64,
    /// Number of enlargements applied to the initial window.
    pub level: u32,
    pub points: Vec<Point>,
}

impl PointPattern {
    /// A pattern from explicit points; used for hand-made configurations.
    pub fn from_points(params: ModelParams, window: Window, points: Vec<Point>) -> Result<Self> {
        let q = params.q();
        for p in &points {
            if p.x.len() != params.dim() {
                return Err(Error::domain("point dimension does not match the model"));
            }
            if !(p.w(q) > 0.0) {
                return Err(Error::domain(format!("point with y = {} lies below -q|x|", p.y)));
            }
        }
        Ok(PointPattern { params, window, seed: 0, level: 0, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Grow the window one step, keeping every existing point and sampling
    /// only the increment from its own stream.
    pub fn enlarge(&mut self) -> Result<()> {
        if self.level >= MAX_LEVEL {
            return Err(Error::Resource {
                what: "pattern enlargements",
                needed: (self.level + 1) as f64,
                budget: MAX_LEVEL as f64,
            });
        }
        let next = self.level + 1;
        let old = self.window;
        let new = old.enlarged();
        let p = self.params;
        let q = p.q();
        let a = p.alpha();
        let df = p.d() as f64;
        match (old, new) {
            (Window::Rect { l, u_min }, Window::Rect { l: l2, u_min: u2 }) => {
                // shell L < |x| ≤ 2L, w ≥ u/2
                let mut rng = prf::stream(self.seed, &[PATTERN_TAG, next as u64, 0]);
                let lo = l.powf(df);
                let hi = l2.powf(df);
                let mass = (l1_volume(df, l2) - l1_volume(df, l)) * u2.powf(-a);
                for _ in 0..poisson(&mut rng, mass)? {
                    let r = (lo + rng.random::<f64>() * (hi - lo)).powf(1.0 / df);
                    let w = u2 * open01(&mut rng).powf(-1.0 / a);
                    self.points.push(place(&mut rng, p.dim(), r, w, q));
                }
                // band |x| ≤ L, u/2 ≤ w < u
                let mut rng = prf::stream(self.seed, &[PATTERN_TAG, next as u64, 1]);
                let (pa, pb) = (u2.powf(-a), u_min.powf(-a));
                let mass = l1_volume(df, l) * (pa - pb);
                for _ in 0..poisson(&mut rng, mass)? {
                    let r = l * open01(&mut rng).powf(1.0 / df);
                    let w = (pa - rng.random::<f64>() * (pa - pb)).powf(-1.0 / a).min(u_min);
                    self.points.push(place(&mut rng, p.dim(), r, w, q));
                }
            }
            (Window::Cone { .. }, Window::Cone { .. }) => {
                // thin the larger cone to the part outside the old one
                let mut rng = prf::stream(self.seed, &[PATTERN_TAG, next as u64, 0]);
                for pt in sample_cone(&mut rng, &p, &new)? {
                    if !old.contains(pt.norm, pt.w(q)) {
                        self.points.push(pt);
                    }
                }
            }
            _ => unreachable!("enlarged() preserves the window kind"),
        }
        self.window = new;
        self.level = next;
        Ok(())
    }
}

/// Sample `Π` on `window`; deterministic in `seed`.
pub fn sample_pattern(params: &ModelParams, window: Window, seed: u64) -> Result<PointPattern> {
    // re-validate: the enum fields are public
    match window {
        Window::Rect { l, u_min } => {
            Window::rect(l, u_min)?;
        }
        Window::Cone { m, kappa } => {
            Window::cone(m, kappa)?;
        }
    }
    let mut rng = prf::stream(seed, &[PATTERN_TAG, 0, 0]);
    let q = params.q();
    let a = params.alpha();
    let df = params.d() as f64;
    let points = match window {
        Window::Rect { l, u_min } => {
            let n = poisson(&mut rng, window.mass(params))?;
            let mut pts = Vec::with_capacity(n as usize);
            for _ in 0..n {
                let r = l * open01(&mut rng).powf(1.0 / df);
                let w = u_min * open01(&mut rng).powf(-1.0 / a);
                pts.push(place(&mut rng, params.dim(), r, w, q));
            }
            pts
        }
        Window::Cone { .. } => sample_cone(&mut rng, params, &window)?,
    };
    Ok(PointPattern { params: *params, window, seed, level: 0, points })
}

/// Cone window `w ≥ m + κr`: with `v = m/(m+κr)` the radial law is
/// `Beta(α-d, d)`, and `w` is Pareto above `m + κr`.
fn sample_cone(rng: &mut ChaCha8Rng, params: &ModelParams, window: &Window) -> Result<Vec<Point>> {
    let Window::Cone { m, kappa } = *window else {
        unreachable!("called with a cone window")
    };
    let df = params.d() as f64;
    let a = params.alpha();
    let radial = Beta::new(a - df, df).map_err(|e| Error::domain(e.to_string()))?;
    let n = poisson(rng, window.mass(params))?;
    let mut pts = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let v = loop {
            let v: f64 = radial.sample(rng);
            if v > 0.0 {
                break v;
            }
        };
        let r = m * (1.0 - v) / (kappa * v);
        let w = (m + kappa * r) * open01(rng).powf(-1.0 / a);
        pts.push(place(rng, params.dim(), r, w, params.q()));
    }
    Ok(pts)
}

const MAX_POINTS: f64 = 5e7;

fn poisson(rng: &mut ChaCha8Rng, mean: f64) -> Result<u64> {
    if !(mean.is_finite()) || mean > MAX_POINTS {
        return Err(Error::Resource { what: "pattern points", needed: mean, budget: MAX_POINTS });
    }
    if mean <= 0.0 {
        return Ok(0);
    }
    let d = Poisson::new(mean).map_err(|e| Error::domain(e.to_string()))?;
    Ok(d.sample(rng) as u64)
}

fn open01(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.random::<f64>()
}

/// A point at ℓ¹ radius `r` in a uniform direction: exponential spacings give
/// a uniform point on the simplex, then independent signs.
fn place(rng: &mut ChaCha8Rng, d: usize, r: f64, w: f64, q: f64) -> Point {
    let mut x = vec![0.0; d];
    if d == 1 {
        x[0] = r;
    } else {
        let mut s = 0.0;
        for c in x.iter_mut() {
            let e: f64 = Exp1.sample(rng);
            *c = e;
            s += e;
        }
        for c in x.iter_mut() {
            *c *= r / s;
        }
    }
    for c in x.iter_mut() {
        if rng.random::<bool>() {
            *c = -*c;
        }
    }
    Point { x, y: w - q * r, norm: r }
}
