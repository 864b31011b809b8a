use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use super::args::*;
use super::{resolve, Command};
use crate::ageing::{
    envelope_experiment, estimate_profile_persistence, i_theta, limit_persistence, moderate_deviation_check,
    replica_seed, residual_law_check, scaling_marginal_check, tail_references, z_persistence_run, Envelope,
    ExperimentReport, FieldKind, ProfileOptions, Provenance, ZOptions, LIMIT_TOL,
};
use crate::analytics::ModelParams;
use crate::io::{fmt_f64, OutputDir};
use crate::limit::{cone_path, nu_region_mass, sample_adaptive, sample_pattern, truncation_bound, PointPattern, Window};
use crate::potential::{ExceedanceField, PotentialSpec, SiteSource};
use crate::solver::{solve, SolverConfig};
use crate::tracker::{Tracker, TrackerConfig};
use crate::{Error, Result};

/// Every field is set after [`resolve`], which rejects nulls.
fn get<T: Clone>(x: &Option<T>) -> T {
    x.clone().expect("resolved config has every field")
}

fn params(m: &ModelArgs) -> Result<ModelParams> {
    ModelParams::new(get(&m.d), get(&m.alpha))
}

fn field_kind(s: &str) -> Result<FieldKind> {
    match s {
        "sparse" => Ok(FieldKind::Sparse),
        "dense" => Ok(FieldKind::Dense),
        _ => Err(Error::Validation(format!("field must be `sparse` or `dense`, got `{s}`"))),
    }
}

/// Resolve, then write `config.json` with the command name in front.
fn setup<T: Serialize + serde::de::DeserializeOwned>(
    name: &str,
    defaults: T,
    file: Option<&Map<String, Value>>,
    flags: &T,
    out: &Path,
) -> Result<(T, OutputDir, Value)> {
    let cfg = resolve(name, &defaults, file, flags)?;
    let mut obj = Map::new();
    obj.insert("command".into(), Value::String(name.into()));
    if let Value::Object(m) = serde_json::to_value(&cfg)? {
        obj.extend(m);
    }
    let value = Value::Object(obj);
    let dir = OutputDir::create(out)?;
    dir.write_json("config.json", &value)?;
    Ok((cfg, dir, value))
}

pub(super) fn dispatch(cmd: &Command, file: Option<&Map<String, Value>>, out: &Path) -> Result<String> {
    let name = cmd.name();
    match cmd {
        Command::Itheta(a) => itheta(setup(name, ItArgs::defaults(), file, a, out)?),
        Command::NuMass(a) => nu_mass(setup(name, NuArgs::defaults(), file, a, out)?),
        Command::SampleLimit(a) => sample_limit(setup(name, SampleArgs::defaults(), file, a, out)?),
        Command::ConePath(a) => cone(setup(name, ConeArgs::defaults(), file, a, out)?),
        Command::Track(a) => track(setup(name, TrackArgs::defaults(), file, a, out)?),
        Command::Solve(a) => solve_cmd(setup(name, SolveArgs::defaults(), file, a, out)?),
        Command::Persistence(a) => persistence(setup(name, PersistArgs::defaults(), file, a, out)?),
        Command::ModerateDev(a) => moderate_dev(setup(name, ModDevArgs::defaults(), file, a, out)?),
        Command::Envelope(a) => envelope(setup(name, EnvelopeArgs::defaults(), file, a, out)?),
        Command::ScalingCheck(a) => scaling(setup(name, ScalingArgs::defaults(), file, a, out)?),
    }
}

fn itheta((a, dir, _): (ItArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let th = get(&a.theta);
    let v = i_theta(&p, th)?;
    dir.write_csv("itheta.csv", &["theta", "i_theta"], [[fmt_f64(th), fmt_f64(v)]])?;
    Ok(format!("{v:?}"))
}

fn nu_mass((a, dir, _): (NuArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let (th, r, y) = (get(&a.theta), get(&a.r), get(&a.y));
    let v = nu_region_mass(&p, th, r, y)?;
    dir.write_csv("nu_mass.csv", &["theta", "r", "y", "mass"], [[th, r, y, v].map(fmt_f64)])?;
    Ok(format!("{v:?}"))
}

fn write_points(dir: &OutputDir, pat: &PointPattern) -> Result<()> {
    let d = pat.params.dim();
    let q = pat.params.q();
    let mut header: Vec<String> = vec!["index".into()];
    header.extend((1..=d).map(|i| format!("x{i}")));
    header.extend(["y", "norm", "w"].map(String::from));
    let h: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    dir.write_csv(
        "points.csv",
        &h,
        pat.points.iter().enumerate().map(|(i, p)| {
            let mut row = vec![i.to_string()];
            row.extend(p.x.iter().map(|&c| fmt_f64(c)));
            row.extend([p.y, p.norm, p.w(q)].map(fmt_f64));
            row
        }),
    )?;
    Ok(())
}

fn sample_limit((a, dir, _): (SampleArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let window = match get(&a.window).as_str() {
        "rect" => Window::rect(get(&a.l), get(&a.u_min))?,
        "cone" => Window::for_range(&p, get(&a.m), get(&a.t_hi))?,
        w => return Err(Error::Validation(format!("window must be `rect` or `cone`, got `{w}`"))),
    };
    let mut pat = sample_pattern(&p, window, get(&a.model.seed))?;
    for _ in 0..get(&a.enlarge) {
        pat.enlarge()?;
    }
    write_points(&dir, &pat)?;
    dir.write_json("pattern.json", &pat)?;
    Ok(format!("{} points, window {:?}, expected {:.6}", pat.len(), pat.window, pat.window.mass(&p)))
}

fn cone((a, dir, _): (ConeArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let (lo, hi) = (get(&a.t_lo), get(&a.t_hi));
    if !(lo > 0.0 && lo <= hi) {
        return Err(Error::Validation(format!("need 0 < t_lo ≤ t_hi, got [{lo}, {hi}]")));
    }
    let (pat, bound) = sample_adaptive(&p, lo, hi, get(&a.model.seed), get(&a.tol))?;
    let path = cone_path(&pat, lo, hi)?;
    let q = p.q();
    write_points(&dir, &pat)?;
    dir.write_csv(
        "segments.csv",
        &["t_start", "t_end", "index", "norm", "y", "w", "tip_start", "tip_end"],
        path.segments.iter().map(|s| {
            let pt = &pat.points[s.index];
            vec![
                fmt_f64(s.t_start),
                fmt_f64(s.t_end),
                s.index.to_string(),
                fmt_f64(pt.norm),
                fmt_f64(pt.y),
                fmt_f64(pt.w(q)),
                fmt_f64(pt.score(q, s.t_start)),
                fmt_f64(pt.score(q, s.t_end)),
            ]
        }),
    )?;
    dir.write_json("path.json", &path)?;
    let check = truncation_bound(&p, &pat, &pat.window, lo, hi)?;
    debug_assert_eq!(check, bound);
    Ok(format!("{} jumps on [{lo}, {hi}], {} points, truncation bound {bound:e}", path.jumps(), pat.len()))
}

fn track((a, dir, _): (TrackArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let seed = get(&a.model.seed);
    let cfg = TrackerConfig { k: get(&a.k), ..Default::default() };
    match field_kind(&get(&a.field))? {
        FieldKind::Sparse => track_with(ExceedanceField::new(p, seed), &a, cfg, &dir),
        FieldKind::Dense => track_with(PotentialSpec::new(p, seed), &a, cfg, &dir),
    }
}

fn track_with<S: SiteSource>(src: S, a: &TrackArgs, cfg: TrackerConfig, dir: &OutputDir) -> Result<String> {
    let (t0, t1) = (get(&a.t0), get(&a.t1));
    if !(t1 >= t0) {
        return Err(Error::Validation(format!("need t1 ≥ t0, got {t0}, {t1}")));
    }
    let mut tr = Tracker::new(src, t0, cfg)?;
    tr.advance(t1)?;
    let path = tr.path();
    dir.write_csv(
        "jumps.csv",
        &["tau", "from", "to", "xi_from", "xi_to", "gap_before", "escape"],
        path.jumps.iter().map(|j| {
            vec![
                fmt_f64(j.tau),
                j.from_site.to_csv_field(),
                j.to_site.to_csv_field(),
                fmt_f64(j.xi_from),
                fmt_f64(j.xi_to),
                fmt_f64(j.gap_before),
                j.escape.to_string(),
            ]
        }),
    )?;
    dir.write_csv(
        "scans.csv",
        &["t", "horizon", "radius", "floor", "candidates", "attempts"],
        tr.scans().iter().map(|s| {
            vec![
                fmt_f64(s.t),
                fmt_f64(s.horizon),
                s.radius.to_string(),
                fmt_f64(s.floor),
                s.candidates.to_string(),
                s.attempts.to_string(),
            ]
        }),
    )?;
    dir.write_json("path.json", &path)?;
    dir.write_json("state.json", &tr.state())?;
    Ok(format!(
        "{} jumps on [{t0}, {t1}], Z = {} with ξ = {:.6}",
        path.jumps.len(),
        tr.leader().site.to_csv_field(),
        tr.leader().xi
    ))
}

fn solve_cmd((a, dir, _): (SolveArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let t_end = get(&a.t_end);
    let n_obs = get(&a.n_obs);
    let cfg = SolverConfig {
        dt_factor: get(&a.dt_factor),
        initial_radius: get(&a.initial_radius),
        site_budget: get(&a.site_budget),
        ..Default::default()
    };
    let field = PotentialSpec::new(p, get(&a.model.seed));
    let schedule: Vec<f64> = (1..=n_obs).map(|k| t_end * k as f64 / n_obs as f64).collect();
    let out = solve(&field, t_end, &schedule, cfg)?;
    dir.write_csv(
        "series.csv",
        &["t", "peak", "v_peak", "log_mass", "leak"],
        out.series.iter().map(|o| {
            vec![fmt_f64(o.t), o.x.to_csv_field(), fmt_f64(o.v_peak), fmt_f64(o.log_mass), fmt_f64(o.leak)]
        }),
    )?;
    dir.write_json("stats.json", &out.stats)?;
    let last = out.series.last();
    Ok(format!(
        "t = {t_end}: X = {}, v = {:.6}, log U = {:.10}, box radius {}",
        last.map_or("-".into(), |o| o.x.to_csv_field()),
        last.map_or(f64::NAN, |o| o.v_peak),
        last.map_or(f64::NAN, |o| o.log_mass),
        out.box_radius
    ))
}

fn persistence((a, dir, cfgv): (PersistArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let seed = get(&a.model.seed);
    let t = get(&a.t);
    let thetas = get(&a.thetas);
    let n = get(&a.n_reps);
    let mut report;
    match get(&a.kind).as_str() {
        "z" => {
            let opts = ZOptions { field: field_kind(&get(&a.field))?, ..Default::default() };
            let run = z_persistence_run(&p, t, &thetas, n, seed, &opts)?;
            report = run.report(&p, cfgv, seed)?;
            let mut header = vec!["replica".to_string(), "seed".into(), "leader".into(), "xi".into()];
            header.extend(thetas.iter().map(|th| format!("persisted_{th}")));
            header.extend(["residual", "censored"].map(String::from));
            let h: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
            dir.write_csv(
                "replicas.csv",
                &h,
                run.outcomes.iter().enumerate().map(|(i, o)| match o {
                    Some(o) => {
                        let mut r = vec![i.to_string(), o.seed.to_string(), o.leader.to_csv_field(), fmt_f64(o.xi)];
                        r.extend(o.persisted.iter().map(|b| b.to_string()));
                        r.extend([fmt_f64(o.residual.value), o.residual.censored.to_string()]);
                        r
                    }
                    None => {
                        let mut r = vec![i.to_string(), replica_seed(seed, i).to_string(), "error".into(), String::new()];
                        r.extend(std::iter::repeat_n(String::new(), thetas.len() + 2));
                        r
                    }
                }),
            )?;
        }
        "profile" => {
            let eps = get(&a.eps);
            let opts = ProfileOptions { n_obs: get(&a.n_obs), ..Default::default() };
            report = ExperimentReport::new("persistence", p, cfgv, seed, n);
            let mut rows = Vec::new();
            for &th in &thetas {
                let run = estimate_profile_persistence(&p, t, th, eps, n, seed, &opts)?;
                report.estimate(format!("P(sup |v(t) - v(s)| < {eps} on [t, t(1+{th})])"), run.estimate);
                report.reference(format!("I({th})"), i_theta(&p, th)?, Provenance::Quadrature);
                for (i, o) in run.outcomes.iter().enumerate() {
                    rows.push(match o {
                        Some(o) => vec![i.to_string(), fmt_f64(th), o.seed.to_string(), o.persisted.to_string(), fmt_f64(o.sup_diff)],
                        None => vec![i.to_string(), fmt_f64(th), replica_seed(seed, i).to_string(), "error".into(), String::new()],
                    });
                }
            }
            dir.write_csv("replicas.csv", &["replica", "theta", "seed", "persisted", "sup_diff"], rows)?;
        }
        "limit" => {
            let lp = limit_persistence(&p, &thetas, n, seed, LIMIT_TOL)?;
            report = ExperimentReport::new("persistence", p, cfgv, seed, n);
            let mut rows = Vec::new();
            for (th, e) in thetas.iter().zip(&lp.estimates) {
                let i = i_theta(&p, *th)?;
                report.estimate(format!("P(Y_1 = Y_(1+{th}))"), *e);
                report.reference(format!("I({th})"), i, Provenance::Quadrature);
                report.verdict(
                    format!("within 3 se of I({th})"),
                    e.agrees(i, 3.0, 0.0),
                    format!("{:.6} ± {:.6} vs {:.6}", e.value, e.stderr, i),
                );
                rows.push(vec![fmt_f64(*th), fmt_f64(e.value), fmt_f64(e.stderr), fmt_f64(i)]);
            }
            report.reference("largest truncation bound", lp.max_bound, Provenance::ClosedForm);
            dir.write_csv("estimates.csv", &["theta", "estimate", "stderr", "i_theta"], rows)?;
        }
        k => return Err(Error::Validation(format!("kind must be `z`, `profile` or `limit`, got `{k}`"))),
    }
    tail_references(&p, &mut report)?;
    dir.write_json("report.json", &report)?;
    let summary: Vec<String> = report
        .estimates
        .iter()
        .map(|e| format!("{:.4} ± {:.4}", e.estimate.value, e.estimate.stderr))
        .collect();
    Ok(format!("persistence ({}) at t = {t}: {}", get(&a.kind), summary.join(", ")))
}

fn moderate_dev((a, dir, cfgv): (ModDevArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let seed = get(&a.model.seed);
    let md = moderate_deviation_check(&p, get(&a.t), get(&a.n_reps), seed, &ZOptions::default())?;
    let report = md.report(&p, cfgv, seed);
    dir.write_json("report.json", &report)?;
    dir.write_csv(
        "moderate_dev.csv",
        &["t", "theta_t", "estimate", "stderr", "scaled", "constant", "ratio", "i_theta_t"],
        [[md.t, md.theta_t, md.estimate.value, md.estimate.stderr, md.scaled, md.constant, md.ratio, md.i_theta_t]
            .map(fmt_f64)],
    )?;
    Ok(format!(
        "θ_t = {:.4}: θ_t^d P = {:.4} ± {:.4} vs {:.4} (ratio {:.3})",
        md.theta_t, md.scaled, md.scaled_stderr, md.constant, md.ratio
    ))
}

fn envelope((a, dir, cfgv): (EnvelopeArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let seed = get(&a.model.seed);
    let choice = match get(&a.h).as_str() {
        "convergent" => Envelope::Convergent,
        "divergent" => Envelope::Divergent { c: get(&a.c) },
        h => return Err(Error::Validation(format!("h must be `convergent` or `divergent`, got `{h}`"))),
    };
    let opts = ZOptions { theta_cap: get(&a.theta_cap), ..Default::default() };
    let run = envelope_experiment(&p, choice, get(&a.n_grid), seed, get(&a.kappa), &opts)?;
    dir.write_csv(
        "envelope.csv",
        &["n", "t", "residual", "censored", "ratio", "running_max"],
        run.rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                fmt_f64(r.t),
                fmt_f64(r.residual),
                r.censored.to_string(),
                fmt_f64(r.ratio),
                fmt_f64(r.running_max),
            ]
        }),
    )?;
    let mut report = ExperimentReport::new("envelope", p, cfgv, seed, 1);
    let detail = match choice {
        Envelope::Convergent => format!(
            "fraction of ratios > 1: first half {:.3}, second half {:.3}",
            run.exceed_first_half, run.exceed_second_half
        ),
        Envelope::Divergent { .. } => format!(
            "ratios > κ = {}: {} in the first half, {} overall",
            run.kappa, run.kappa_count_half, run.kappa_count_full
        ),
    };
    report.verdict("trend diagnostic (not a proof of the almost-sure statement)", run.trend_ok, detail.clone());
    let n = get(&a.n_reps);
    let mut law_line = String::new();
    if n > 0 {
        let law = residual_law_check(&p, get(&a.t), n, seed, &opts)?;
        report.replicas = n;
        report.reference("KS critical value (5%)", law.critical, Provenance::ClosedForm);
        report.verdict(
            "R(t)/t against 1 - I(θ), KS at 5%",
            law.pass,
            format!("D = {:.5}, critical {:.5}, censored {}", law.ks, law.critical, law.censored),
        );
        dir.write_csv("residuals.csv", &["replica", "r_over_t"], law.sample.values.iter().enumerate().map(|(i, v)| [i.to_string(), fmt_f64(*v)]))?;
        law_line = format!("; KS D = {:.4} (critical {:.4})", law.ks, law.critical);
    }
    dir.write_json("report.json", &report)?;
    Ok(format!("envelope {}: {detail}, trend {}{law_line}", get(&a.h), if run.trend_ok { "ok" } else { "not seen" }))
}

fn scaling((a, dir, cfgv): (ScalingArgs, OutputDir, Value)) -> Result<String> {
    let p = params(&a.model)?;
    let seed = get(&a.model.seed);
    let n = get(&a.n_reps);
    let run = scaling_marginal_check(&p, &get(&a.big_t), &get(&a.t_probe), n, seed, &ZOptions::default())?;
    dir.write_csv(
        "scaling.csv",
        &["T", "t_probe", "ks_norm", "ks_phi", "ks_xi", "replicas", "critical"],
        run.rows.iter().map(|r| {
            vec![
                fmt_f64(r.big_t),
                fmt_f64(r.t_probe),
                fmt_f64(r.ks_norm),
                fmt_f64(r.ks_phi),
                fmt_f64(r.ks_xi),
                r.replicas.to_string(),
                fmt_f64(r.critical),
            ]
        }),
    )?;
    let mut report = ExperimentReport::new("scaling-check", p, cfgv, seed, n);
    for (tp, flags) in &run.decreasing {
        for (name, ok) in ["|Z|/r_T", "Φ/a_T", "ξ/a_T"].iter().zip(flags) {
            report.verdict(format!("KS distance of {name} decreases in T at t = {tp}"), *ok, "");
        }
    }
    dir.write_json("report.json", &report)?;
    let last: Vec<String> = run
        .rows
        .iter()
        .map(|r| format!("T={:e}: {:.3}/{:.3}/{:.3}", r.big_t, r.ks_norm, r.ks_phi, r.ks_xi))
        .collect();
    Ok(format!("KS distances (norm/phi/xi) {}", last.join(", ")))
}
