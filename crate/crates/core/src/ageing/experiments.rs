//! Monte Carlo drivers. Replica `i` of a run with base seed `s` uses the
//! potential seed `key(s, [i])` and, where a limit pattern is needed,
//! `key(s, [LIMIT_TAG, i])`. Replicas run in parallel; results are collected
//! in replica order so every reported number is reproducible.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::itheta::{i_tail_constants, i_theta};
use super::report::{ExperimentReport, Provenance};
use super::stats::{ks_critical_one, ks_critical_two, ks_one_sample, ks_two_sample, CensoredSample, Estimate, KS_C_05};
use crate::analytics::{scale_a, scale_r, LatticeSite, ModelParams};
use crate::limit::{cone_argmax, cone_path, sample_adaptive};
use crate::potential::{prf, ExceedanceField, PotentialSpec, SiteSource};
use crate::solver::{Solver, SolverConfig};
use crate::tracker::{Residual, Tracker, TrackerConfig};
use crate::{Error, Result};

/// Domain tag for limit-process replicas (`"LIM"`).
pub const LIMIT_TAG: u64 = 0x4c_494d;

/// Truncation bound required of every limit pattern.
pub const LIMIT_TOL: f64 = 1e-6;

pub fn replica_seed(seed: u64, i: usize) -> u64 {
    prf::key(seed, &[i as u64])
}

pub fn limit_replica_seed(seed: u64, i: usize) -> u64 {
    prf::key(seed, &[LIMIT_TAG, i as u64])
}

fn fan_out<T: Send, F: Fn(usize) -> Result<T> + Sync + Send>(n: usize, f: F) -> Vec<Result<T>> {
    (0..n).into_par_iter().map(f).collect()
}

/// Keep the successes; fail only if nothing succeeded.
fn split<T>(results: Vec<Result<T>>) -> Result<(Vec<Option<T>>, usize)> {
    let n = results.len();
    let mut first_err = None;
    let mut out = Vec::with_capacity(n);
    let mut failures = 0;
    for r in results {
        match r {
            Ok(x) => out.push(Some(x)),
            Err(e) => {
                failures += 1;
                first_err.get_or_insert(e);
                out.push(None);
            }
        }
    }
    match first_err {
        Some(e) if failures == n => Err(e),
        _ => Ok((out, failures)),
    }
}

fn check_reps(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Validation("need at least one replica".into()));
    }
    Ok(())
}

/// Which potential backs the tracker.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    /// [`ExceedanceField`]: any `t`.
    #[default]
    Sparse,
    /// [`PotentialSpec`]: the same values the lattice solver sees.
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZOptions {
    pub field: FieldKind,
    pub tracker: TrackerConfig,
    /// Residual lifetimes are censored at `theta_cap · t`.
    pub theta_cap: f64,
}

impl Default for ZOptions {
    fn default() -> Self {
        ZOptions { field: FieldKind::Sparse, tracker: TrackerConfig::default(), theta_cap: 1000.0 }
    }
}

/// One tracked replica.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZOutcome {
    pub seed: u64,
    pub leader: LatticeSite,
    pub xi: f64,
    /// `Φ_t(Z_t)`.
    pub phi: f64,
    /// `Z_t = Z_{t(1+θ)}` for each requested θ.
    pub persisted: Vec<bool>,
    pub residual: Residual,
}

/// Replicated tracker runs at a common `t`.
#[derive(Clone, Debug, Serialize)]
pub struct ZRun {
    pub t: f64,
    pub thetas: Vec<f64>,
    pub estimates: Vec<Estimate>,
    pub outcomes: Vec<Option<ZOutcome>>,
    pub failures: usize,
}

fn track_one<S: SiteSource>(src: S, seed: u64, t: f64, thetas: &[f64], opts: &ZOptions) -> Result<ZOutcome> {
    let mut tr = Tracker::new(src, t, opts.tracker)?;
    let lead = *tr.leader();
    let mut order: Vec<usize> = (0..thetas.len()).collect();
    order.sort_by(|&a, &b| thetas[a].total_cmp(&thetas[b]));
    let mut persisted = vec![false; thetas.len()];
    for &k in &order {
        tr.advance(t * (1.0 + thetas[k]))?;
        persisted[k] = tr.leader().site == lead.site;
    }
    let cap = t * (1.0 + opts.theta_cap);
    while !tr.jumps().iter().any(|j| j.tau > t) && tr.t() < cap {
        tr.next_jump(cap)?;
    }
    let mut residual = tr.path().residual_lifetime(t);
    if residual.censored || residual.value > opts.theta_cap * t {
        residual = Residual { value: opts.theta_cap * t, censored: true };
    }
    Ok(ZOutcome { seed, leader: lead.site, xi: lead.xi, phi: lead.phi(t), persisted, residual })
}

fn track_replica(params: &ModelParams, seed: u64, t: f64, thetas: &[f64], opts: &ZOptions) -> Result<ZOutcome> {
    match opts.field {
        FieldKind::Sparse => track_one(ExceedanceField::new(*params, seed), seed, t, thetas, opts),
        FieldKind::Dense => track_one(PotentialSpec::new(*params, seed), seed, t, thetas, opts),
    }
}

/// Track `n` replicas from `t`, recording persistence over each `θ` and the
/// residual lifetime of `Z_t`.
pub fn z_persistence_run(
    params: &ModelParams,
    t: f64,
    thetas: &[f64],
    n: usize,
    seed: u64,
    opts: &ZOptions,
) -> Result<ZRun> {
    check_reps(n)?;
    if !(t > 1.0) {
        return Err(Error::Validation(format!("persistence needs t > 1, got {t}")));
    }
    if let Some(th) = thetas.iter().find(|th| !(**th >= 0.0 && th.is_finite())) {
        return Err(Error::Validation(format!("θ must be finite and ≥ 0, got {th}")));
    }
    let results = fan_out(n, |i| track_replica(params, replica_seed(seed, i), t, thetas, opts));
    let (outcomes, failures) = split(results)?;
    let ok = n - failures;
    let estimates = (0..thetas.len())
        .map(|k| {
            let hits = outcomes.iter().flatten().filter(|o| o.persisted[k]).count();
            Estimate::proportion(hits, ok, failures)
        })
        .collect();
    Ok(ZRun { t, thetas: thetas.to_vec(), estimates, outcomes, failures })
}

/// Fraction of replicas with `Z_t = Z_{t+θt}`.
pub fn estimate_z_persistence(params: &ModelParams, t: f64, theta: f64, n: usize, seed: u64) -> Result<Estimate> {
    Ok(z_persistence_run(params, t, &[theta], n, seed, &ZOptions::default())?.estimates[0])
}

impl ZRun {
    pub fn report(&self, params: &ModelParams, config: serde_json::Value, seed: u64) -> Result<ExperimentReport> {
        let mut r = ExperimentReport::new("persistence", *params, config, seed, self.outcomes.len());
        for (th, e) in self.thetas.iter().zip(&self.estimates) {
            let i = i_theta(params, *th)?;
            r.estimate(format!("P(Z_t = Z_t(1+θ)), θ = {th}"), *e);
            r.reference(format!("I({th})"), i, Provenance::Quadrature);
            r.verdict(
                format!("within max(3 se, 0.03) of I({th})"),
                e.agrees(i, 3.0, 0.03),
                format!("{:.6} ± {:.6} vs {:.6}", e.value, e.stderr, i),
            );
        }
        Ok(r)
    }
}

/// Options of the lattice-solver persistence experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileOptions {
    /// Observation times in `(t, t(1+θ)]`, evenly spaced.
    pub n_obs: usize,
    pub solver: SolverConfig,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions { n_obs: 200, solver: SolverConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileOutcome {
    pub seed: u64,
    pub persisted: bool,
    /// Largest observed `sup_z |v(t,z) - v(s,z)|`; observation stops at the
    /// first value `≥ ε`.
    pub sup_diff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileRun {
    pub estimate: Estimate,
    pub outcomes: Vec<Option<ProfileOutcome>>,
}

/// Fraction of solver replicas whose profile moves by less than `ε`
/// (sup norm) over `[t, t(1+θ)]`, checked on an observer grid.
pub fn estimate_profile_persistence(
    params: &ModelParams,
    t: f64,
    theta: f64,
    eps: f64,
    n: usize,
    seed: u64,
    opts: &ProfileOptions,
) -> Result<ProfileRun> {
    check_reps(n)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Validation(format!("ε must lie in (0, 1), got {eps}")));
    }
    if !(t > 0.0) || !(theta >= 0.0) || opts.n_obs == 0 {
        return Err(Error::Validation(format!("bad window t = {t}, θ = {theta}")));
    }
    let results = fan_out(n, |i| {
        let s = replica_seed(seed, i);
        let field = PotentialSpec::new(*params, s);
        let mut solver = Solver::new(&field, opts.solver)?;
        solver.advance_to(t)?;
        let base = solver.state().clone();
        let mut worst: f64 = 0.0;
        if theta > 0.0 {
            for k in 1..=opts.n_obs {
                solver.advance_to(t * (1.0 + theta * k as f64 / opts.n_obs as f64))?;
                worst = worst.max(solver.state().sup_diff(&base));
                if worst >= eps {
                    break;
                }
            }
        }
        Ok(ProfileOutcome { seed: s, persisted: worst < eps, sup_diff: worst })
    });
    let (outcomes, failures) = split(results)?;
    let hits = outcomes.iter().flatten().filter(|o| o.persisted).count();
    Ok(ProfileRun { estimate: Estimate::proportion(hits, n - failures, failures), outcomes })
}

/// Result of the moderate-deviation experiment.
#[derive(Clone, Debug, Serialize)]
pub struct ModerateDeviation {
    pub t: f64,
    /// `θ_t = (log t)^{1/2}`.
    pub theta_t: f64,
    pub estimate: Estimate,
    /// `θ_t^d ·` estimate.
    pub scaled: f64,
    pub scaled_stderr: f64,
    /// `1/(d B(α-d+1, d))`.
    pub constant: f64,
    pub ratio: f64,
    pub i_theta_t: f64,
    /// `|ratio - 1| ≤ 0.25`.
    pub within_band: bool,
    /// `|estimate - I(θ_t)| ≤ 3 se + 0.02`.
    pub consistent: bool,
}

pub fn moderate_deviation_check(
    params: &ModelParams,
    t: f64,
    n: usize,
    seed: u64,
    opts: &ZOptions,
) -> Result<ModerateDeviation> {
    let theta_t = if t > 1.0 { t.ln().sqrt() } else { 0.0 };
    if !(theta_t >= 2.0) {
        return Err(Error::Validation(format!("need (log t)^(1/2) ≥ 2, got θ_t = {theta_t} at t = {t}")));
    }
    let run = z_persistence_run(params, t, &[theta_t], n, seed, opts)?;
    let e = run.estimates[0];
    let pd = theta_t.powi(params.d() as i32);
    let constant = params.i_tail_const();
    let i_at = i_theta(params, theta_t)?;
    Ok(ModerateDeviation {
        t,
        theta_t,
        estimate: e,
        scaled: pd * e.value,
        scaled_stderr: pd * e.stderr,
        constant,
        ratio: pd * e.value / constant,
        i_theta_t: i_at,
        within_band: (pd * e.value / constant - 1.0).abs() <= 0.25,
        consistent: (e.value - i_at).abs() <= 3.0 * e.stderr + 0.02,
    })
}

impl ModerateDeviation {
    pub fn report(&self, params: &ModelParams, config: serde_json::Value, seed: u64) -> ExperimentReport {
        let mut r = ExperimentReport::new("moderate-dev", *params, config, seed, self.estimate.n + self.estimate.failures);
        r.estimate(format!("P(Z_t = Z_t(1+θ_t)), θ_t = {}", self.theta_t), self.estimate);
        r.reference("1/(d B(α-d+1,d))", self.constant, Provenance::ClosedForm);
        r.reference("I(θ_t)", self.i_theta_t, Provenance::Quadrature);
        r.reference("band", 0.25, Provenance::RegressionBound);
        r.verdict("θ_t^d P within 25% of the constant", self.within_band, format!("ratio {:.4}", self.ratio));
        r.verdict(
            "|P - I(θ_t)| ≤ 3 se + 0.02",
            self.consistent,
            format!("{:.5} vs {:.5}", self.estimate.value, self.i_theta_t),
        );
        r
    }
}

/// `R(t)/t` across replicas against `1 - I`.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualLaw {
    pub t: f64,
    pub sample: CensoredSample,
    pub censored: usize,
    pub ks: f64,
    pub critical: f64,
    pub pass: bool,
}

pub fn residual_law_check(params: &ModelParams, t: f64, n: usize, seed: u64, opts: &ZOptions) -> Result<ResidualLaw> {
    let run = z_persistence_run(params, t, &[], n, seed, opts)?;
    let values: Vec<f64> = run.outcomes.iter().flatten().map(|o| o.residual.value / t).collect();
    let censored = run.outcomes.iter().flatten().filter(|o| o.residual.censored).count();
    let sample = CensoredSample { values, cap: opts.theta_cap };
    let mut err = None;
    let ks = ks_one_sample(&sample, |x| match i_theta(params, x.max(0.0)) {
        Ok(i) => 1.0 - i,
        Err(e) => {
            err.get_or_insert(e);
            f64::NAN
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let critical = ks_critical_one(KS_C_05, sample.values.len());
    Ok(ResidualLaw { t, censored, pass: ks <= critical, ks, critical, sample })
}

/// The normalizing function in the envelope diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    /// `h(t) = (log t)^{2/d}`: `∫ dt/(t h^d)` converges.
    Convergent,
    /// `h(t) = c`: the integral diverges.
    Divergent { c: f64 },
}

impl Envelope {
    pub fn h(&self, params: &ModelParams, t: f64) -> f64 {
        match *self {
            Envelope::Convergent => t.ln().powf(2.0 / params.d() as f64),
            Envelope::Divergent { c } => c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnvelopeRow {
    pub n: u32,
    pub t: f64,
    pub residual: f64,
    pub censored: bool,
    /// `R(eⁿ) / (eⁿ h(eⁿ))`.
    pub ratio: f64,
    pub running_max: f64,
}

/// Trend diagnostics for the almost-sure envelope along one path. Neither
/// verdict proves anything about the almost-sure statement.
#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeRun {
    pub choice: Envelope,
    pub kappa: f64,
    pub rows: Vec<EnvelopeRow>,
    /// Fraction of `n` with ratio > 1 in the first and second half of the grid.
    pub exceed_first_half: f64,
    pub exceed_second_half: f64,
    /// Ratio > κ counts over the first half and the full grid.
    pub kappa_count_half: usize,
    pub kappa_count_full: usize,
    /// Convergent: the exceedance fraction does not increase. Divergent:
    /// the κ-exceedance count keeps growing.
    pub trend_ok: bool,
}

pub fn envelope_experiment(
    params: &ModelParams,
    choice: Envelope,
    n_grid: u32,
    seed: u64,
    kappa: f64,
    opts: &ZOptions,
) -> Result<EnvelopeRun> {
    if n_grid < 10 {
        return Err(Error::Validation(format!("envelope grid needs n_grid ≥ 10, got {n_grid}")));
    }
    if let Envelope::Divergent { c } = choice {
        if !(c > 0.0) {
            return Err(Error::Validation(format!("envelope constant must be positive, got {c}")));
        }
    }
    let s = replica_seed(seed, 0);
    match opts.field {
        FieldKind::Sparse => envelope_path(ExceedanceField::new(*params, s), choice, n_grid, kappa, opts),
        FieldKind::Dense => envelope_path(PotentialSpec::new(*params, s), choice, n_grid, kappa, opts),
    }
}

fn envelope_path<S: SiteSource>(
    src: S,
    choice: Envelope,
    n_grid: u32,
    kappa: f64,
    opts: &ZOptions,
) -> Result<EnvelopeRun> {
    let params = *src.params();
    let mut tr = Tracker::new(src, std::f64::consts::E, opts.tracker)?;
    let mut rows = Vec::with_capacity(n_grid as usize);
    let mut running = f64::NEG_INFINITY;
    for n in 1..=n_grid {
        let t = (n as f64).exp();
        if tr.t() < t {
            tr.advance(t)?;
        }
        let cap = t * (1.0 + opts.theta_cap);
        while !tr.jumps().iter().any(|j| j.tau > t) && tr.t() < cap {
            tr.next_jump(cap)?;
        }
        let r = tr.path().residual_lifetime(t);
        let (value, censored) = if r.censored || r.value > opts.theta_cap * t {
            (opts.theta_cap * t, true)
        } else {
            (r.value, false)
        };
        let ratio = value / (t * choice.h(&params, t));
        running = running.max(ratio);
        rows.push(EnvelopeRow { n, t, residual: value, censored, ratio, running_max: running });
    }
    let half = rows.len() / 2;
    let frac = |rs: &[EnvelopeRow]| rs.iter().filter(|r| r.ratio > 1.0).count() as f64 / rs.len() as f64;
    let exceed_first_half = frac(&rows[..half]);
    let exceed_second_half = frac(&rows[half..]);
    let count = |rs: &[EnvelopeRow]| rs.iter().filter(|r| r.ratio > kappa).count();
    let kappa_count_half = count(&rows[..half]);
    let kappa_count_full = count(&rows);
    let trend_ok = match choice {
        Envelope::Convergent => exceed_second_half <= exceed_first_half,
        Envelope::Divergent { .. } => kappa_count_full > kappa_count_half,
    };
    Ok(EnvelopeRun {
        choice,
        kappa,
        rows,
        exceed_first_half,
        exceed_second_half,
        kappa_count_half,
        kappa_count_full,
        trend_ok,
    })
}

/// Persistence `P{Y_1 = Y_{1+θ}}` of the cone process.
#[derive(Clone, Debug, Serialize)]
pub struct LimitPersistence {
    pub thetas: Vec<f64>,
    pub estimates: Vec<Estimate>,
    /// Largest truncation bound over the patterns used.
    pub max_bound: f64,
    pub max_level: u32,
}

pub fn limit_persistence(params: &ModelParams, thetas: &[f64], n: usize, seed: u64, tol: f64) -> Result<LimitPersistence> {
    check_reps(n)?;
    if let Some(th) = thetas.iter().find(|th| !(**th >= 0.0 && th.is_finite())) {
        return Err(Error::Validation(format!("θ must be finite and ≥ 0, got {th}")));
    }
    let t_hi = 1.0 + thetas.iter().cloned().fold(0.0, f64::max);
    let results = fan_out(n, |i| {
        let (pat, bound) = sample_adaptive(params, 1.0, t_hi, limit_replica_seed(seed, i), tol)?;
        let path = cone_path(&pat, 1.0, t_hi)?;
        let y1 = path.leader_at(1.0);
        let same: Vec<bool> = thetas.iter().map(|th| path.leader_at(1.0 + th) == y1).collect();
        Ok((same, bound, pat.level))
    });
    let (outcomes, failures) = split(results)?;
    let ok: Vec<_> = outcomes.into_iter().flatten().collect();
    let estimates = (0..thetas.len())
        .map(|k| Estimate::proportion(ok.iter().filter(|o| o.0[k]).count(), ok.len(), failures))
        .collect();
    Ok(LimitPersistence {
        thetas: thetas.to_vec(),
        estimates,
        max_bound: ok.iter().map(|o| o.1).fold(0.0, f64::max),
        max_level: ok.iter().map(|o| o.2).max().unwrap_or(0),
    })
}

/// Limit-process values at probe time `t`: `|Y¹_t|`, the tip height and
/// `w = Y²_t + q|Y¹_t|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LimitSample {
    pub norm: f64,
    pub tip: f64,
    pub w: f64,
}

pub fn limit_marginals(params: &ModelParams, t: f64, n: usize, seed: u64) -> Result<Vec<LimitSample>> {
    check_reps(n)?;
    let results = fan_out(n, |i| {
        let (pat, _) = sample_adaptive(params, t, t, limit_replica_seed(seed, i), LIMIT_TOL)?;
        let (k, tip) = cone_argmax(&pat, t)?;
        let p = &pat.points[k];
        Ok(LimitSample { norm: p.norm, tip, w: p.w(params.q()) })
    });
    results.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    #[serde(rename = "T")]
    pub big_t: f64,
    pub t_probe: f64,
    /// KS distance of `|Z_{tT}|/r_T` to `|Y¹_t|`.
    pub ks_norm: f64,
    /// `Φ_{tT}(Z_{tT})/a_T` against the tip height.
    pub ks_phi: f64,
    /// `ξ(Z_{tT})/a_T` against `Y²_t + q|Y¹_t|`.
    pub ks_xi: f64,
    pub replicas: usize,
    pub critical: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingRun {
    pub rows: Vec<ScalingRow>,
    /// Per probe: each of the three distance sequences strictly decreases in `T`.
    pub decreasing: Vec<(f64, [bool; 3])>,
}

/// Size of the limit reference sample relative to the replica count. Limit draws are cheap,
/// so the KS noise is dominated by the replica side.
pub const LIMIT_REF_FACTOR: usize = 20;

pub fn scaling_marginal_check(
    params: &ModelParams,
    big_ts: &[f64],
    probes: &[f64],
    n: usize,
    seed: u64,
    opts: &ZOptions,
) -> Result<ScalingRun> {
    check_reps(n)?;
    if big_ts.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Validation("T values must increase".into()));
    }
    let mut rows = Vec::new();
    let mut decreasing = Vec::new();
    for &tp in probes {
        if !(tp > 0.0) {
            return Err(Error::Validation(format!("probe times must be positive, got {tp}")));
        }
        let lim = limit_marginals(params, tp, LIMIT_REF_FACTOR * n, seed)?;
        let ln: Vec<f64> = lim.iter().map(|s| s.norm).collect();
        let lt: Vec<f64> = lim.iter().map(|s| s.tip).collect();
        let lw: Vec<f64> = lim.iter().map(|s| s.w).collect();
        let mut seq = Vec::new();
        for &bt in big_ts {
            let (r, a) = (scale_r(params, bt)?, scale_a(params, bt)?);
            let run = z_persistence_run(params, tp * bt, &[], n, seed, opts)?;
            let ok: Vec<&ZOutcome> = run.outcomes.iter().flatten().collect();
            let pn: Vec<f64> = ok.iter().map(|o| o.leader.l1_norm() as f64 / r).collect();
            let pp: Vec<f64> = ok.iter().map(|o| o.phi / a).collect();
            let px: Vec<f64> = ok.iter().map(|o| o.xi / a).collect();
            let row = ScalingRow {
                big_t: bt,
                t_probe: tp,
                ks_norm: ks_two_sample(&pn, &ln),
                ks_phi: ks_two_sample(&pp, &lt),
                ks_xi: ks_two_sample(&px, &lw),
                replicas: ok.len(),
                critical: ks_critical_two(KS_C_05, ok.len(), lim.len()),
            };
            seq.push(row);
            rows.push(row);
        }
        let strict = |f: fn(&ScalingRow) -> f64| seq.windows(2).all(|w| f(&w[1]) < f(&w[0]));
        decreasing.push((tp, [strict(|r| r.ks_norm), strict(|r| r.ks_phi), strict(|r| r.ks_xi)]));
    }
    Ok(ScalingRun { rows, decreasing })
}

/// `(large-θ constant, C₀)` references for reports.
pub fn tail_references(params: &ModelParams, report: &mut ExperimentReport) -> Result<()> {
    let c = i_tail_constants(params)?;
    report.reference("lim θ^d I(θ)", c.large_theta, Provenance::ClosedForm);
    report.reference("lim (1 - I(θ))/θ", c.c0, Provenance::Quadrature);
    Ok(())
}
