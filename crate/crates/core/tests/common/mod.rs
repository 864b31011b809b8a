#![allow(dead_code)]

use pam_ageing::potential::lattice::for_each_in_ball;
use pam_ageing::potential::{prf, PotentialSpec};
use pam_ageing::tracker::{Tracker, TrackerConfig};
use pam_ageing::{LatticeSite, ModelParams};
use rand::Rng;

/// Log of the multinomial coefficient by direct summation of logs.
pub fn eta_direct(site: &LatticeSite) -> f64 {
    let ln_fact = |n: u64| (1..=n).map(|k| (k as f64).ln()).sum::<f64>();
    let n = site.l1_norm();
    let mut v = ln_fact(n);
    for c in site.coords() {
        v -= ln_fact(c.unsigned_abs());
    }
    v
}

/// `Φ_t` straight from the definition.
pub fn phi_direct(t: f64, site: &LatticeSite, xi: f64, eta: f64) -> f64 {
    let n = site.l1_norm() as f64;
    if t * xi >= n {
        xi - n / t * xi.ln() + eta / t
    } else {
        0.0
    }
}

/// All sites of a box, sorted by decreasing potential, for brute-force argmax.
pub struct BruteBox {
    d: usize,
    sites: Vec<(LatticeSite, f64, f64)>,
}

impl BruteBox {
    pub fn new(spec: &PotentialSpec, radius: u64) -> Self {
        let d = spec.params().dim();
        let mut sites = Vec::new();
        for_each_in_ball(d, radius, |z| sites.push((z, spec.xi(&z), f64::NAN)));
        sites.sort_by(|a, b| b.1.total_cmp(&a.1));
        BruteBox { d, sites }
    }

    /// Exhaustive argmax of `Φ_t`. Scans in order of decreasing `ξ` and stops
    /// once no remaining site can reach the best value: `Φ_t ≤ ξ` for `ξ ≥ d`
    /// (since `η ≤ |z| ln d`) and `Φ_t ≤ d` otherwise.
    pub fn argmax(&mut self, t: f64) -> (LatticeSite, f64) {
        let df = self.d as f64;
        let mut best: Option<(LatticeSite, f64)> = None;
        for e in self.sites.iter_mut() {
            if let Some((_, b)) = best {
                if e.1.max(df) < b {
                    break;
                }
            }
            if e.2.is_nan() {
                e.2 = eta_direct(&e.0);
            }
            let v = phi_direct(t, &e.0, e.1, e.2);
            best = match best {
                None => Some((e.0, v)),
                Some((z, b)) => {
                    let better = v > b
                        || (v == b
                            && (e.0.l1_norm() > z.l1_norm()
                                || (e.0.l1_norm() == z.l1_norm() && e.0.coords() < z.coords())));
                    if better {
                        Some((e.0, v))
                    } else {
                        Some((z, b))
                    }
                }
            };
        }
        best.expect("box is non-empty")
    }
}

/// `exp(A) x` for a small dense matrix by scaling and squaring of a
/// degree-24 Taylor polynomial.
pub fn expm_apply(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let n = a.len();
    let norm = a.iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let scale = 2f64.powi(-s);
    let b: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|v| v * scale).collect()).collect();
    let matmul = |p: &Vec<Vec<f64>>, q: &Vec<Vec<f64>>| {
        let mut r = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                let pik = p[i][k];
                if pik != 0.0 {
                    for j in 0..n {
                        r[i][j] += pik * q[k][j];
                    }
                }
            }
        }
        r
    };
    let mut e = vec![vec![0.0; n]; n];
    let mut term = vec![vec![0.0; n]; n];
    for i in 0..n {
        e[i][i] = 1.0;
        term[i][i] = 1.0;
    }
    for k in 1..=24 {
        term = matmul(&term, &b);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                e[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..s {
        e = matmul(&e, &e);
    }
    (0..n).map(|i| (0..n).map(|j| e[i][j] * x[j]).sum()).collect()
}

/// Generator `Δ + ξ` on the cube of radius `r` with zero boundary values,
/// with sites in the solver's row-major order.
pub fn dirichlet_generator(spec: &PotentialSpec, r: i64) -> (Vec<LatticeSite>, Vec<Vec<f64>>) {
    let d = spec.params().dim();
    let side = (2 * r + 1) as usize;
    let n = side.pow(d as u32);
    let mut sites = Vec::with_capacity(n);
    for idx in 0..n {
        let mut c = vec![0i64; d];
        let mut rem = idx;
        for k in (0..d).rev() {
            c[k] = (rem % side) as i64 - r;
            rem /= side;
        }
        sites.push(LatticeSite::new(&c));
    }
    let mut g = vec![vec![0.0; n]; n];
    for (i, z) in sites.iter().enumerate() {
        g[i][i] = spec.xi(z) - 2.0 * d as f64;
        for (j, y) in sites.iter().enumerate() {
            let dist: u64 = z.coords().iter().zip(y.coords()).map(|(a, b)| (a - b).unsigned_abs()).sum();
            if dist == 1 {
                g[i][j] = 1.0;
            }
        }
    }
    (sites, g)
}

/// `2^d/(d-1)!`: the ℓ¹ sphere area factor, `d Vol{|x| ≤ r} = S r^{d-1}`.
pub fn sphere_factor(d: u32) -> f64 {
    2f64.powi(d as i32) / (1..d).map(|k| k as f64).product::<f64>()
}

/// Plain 2-D Monte Carlo of `∫∫ 1{(ρ, w) ∈ A} S ρ^{d-1} α w^{-α-1} dw dρ`
/// over `ρ ∈ (ρ0, ∞)` and `w > floor(ρ)`, for a region `A` above a known
/// floor. `ρ = ρ0 + s/(1-s)` with `s` uniform, and `w` Pareto above the floor.
/// Returns (mean, stderr).
pub fn region_mc<F, G>(
    d: u32,
    alpha: f64,
    rho0: f64,
    n: usize,
    seed: u64,
    floor: F,
    inside: G,
) -> (f64, f64)
where
    F: Fn(f64) -> f64,
    G: Fn(f64, f64) -> bool,
{
    let mut rng = prf::stream(seed, &[0x6d63]);
    let sf = sphere_factor(d);
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let s: f64 = rng.random();
        let rho = rho0 + s / (1.0 - s);
        let jac = 1.0 / ((1.0 - s) * (1.0 - s));
        let f = floor(rho);
        let u: f64 = 1.0 - rng.random::<f64>();
        let w = f * u.powf(-1.0 / alpha);
        let v = if inside(rho, w) { sf * rho.powi(d as i32 - 1) * f.powf(-alpha) * jac } else { 0.0 };
        s1 += v;
        s2 += v * v;
    }
    let m = s1 / n as f64;
    let var = (s2 / n as f64 - m * m).max(0.0);
    (m, (var / n as f64).sqrt())
}

/// Monte Carlo of `ν(D_θ(r, y))`: the points that beat a point at height `y`
/// and radius `r` at some time in `[1, 1+θ]`. In `(ρ, w)` that is
/// `w > min(y + qρ, y + κr + (q-κ)ρ)` with `κ = qθ/(1+θ)`; the floor
/// `y + qρ/(1+θ)` lies below both lines.
pub fn nu_mc(params: &ModelParams, theta: f64, r: f64, y: f64, n: usize, seed: u64) -> (f64, f64) {
    let q = params.q();
    let kappa = q * theta / (1.0 + theta);
    region_mc(
        params.d(),
        params.alpha(),
        0.0,
        n,
        seed,
        |rho| y + q * rho / (1.0 + theta),
        |rho, w| w > y + q * rho || w > y + kappa * r + (q - kappa) * rho,
    )
}

/// Probes `Z_t` of a tracked path against exhaustive argmax at `probes`
/// log-uniform times in `[t0, t1]`; returns the number of mismatches.
pub fn oracle_run(params: ModelParams, seed: u64, t0: f64, t1: f64, probes: usize) -> usize {
    let spec = PotentialSpec::new(params, seed);
    let mut tr = Tracker::new(spec.clone(), t0, TrackerConfig::default()).unwrap();
    tr.advance(t1).unwrap();
    let path = tr.path();
    let scans = tr.scans().to_vec();
    let mut boxes: Vec<Option<BruteBox>> = scans.iter().map(|_| None).collect();
    let mut rng = prf::stream(seed, &[0xface]);
    let mut mismatches = 0;
    for _ in 0..probes {
        let s = t0 * (t1 / t0).powf(rng.random::<f64>());
        let i = scans.partition_point(|sc| sc.t <= s) - 1;
        let b = boxes[i].get_or_insert_with(|| BruteBox::new(&spec, scans[i].radius));
        let (z, _) = b.argmax(s);
        if z != path.leader_at(s) {
            mismatches += 1;
        }
    }
    mismatches
}
