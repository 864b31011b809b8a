use serde::Serialize;

use super::{Solver, SolverConfig, SolverStats};
use crate::analytics::LatticeSite;
use crate::potential::PotentialSpec;
use crate::tracker::Residual;
use crate::{Error, Result};

/// One row of the solver's time series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Observation {
    pub t: f64,
    pub x: LatticeSite,
    pub v_peak: f64,
    pub log_mass: f64,
    pub leak: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOutput {
    pub series: Vec<Observation>,
    pub stats: SolverStats,
    pub box_radius: u64,
}

/// Integrate to `t_end`, recording `(t, X_t, v(t,X_t), log U(t), leak)` at
/// every schedule time in `(0, t_end]`.
pub fn solve(
    field: &PotentialSpec,
    t_end: f64,
    schedule: &[f64],
    cfg: SolverConfig,
) -> Result<SolveOutput> {
    if !(t_end > 0.0) {
        return Err(Error::domain(format!("t_end must be positive, got {t_end}")));
    }
    let mut times: Vec<f64> = schedule.iter().copied().filter(|&s| s > 0.0 && s <= t_end).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let mut solver = Solver::new(field, cfg)?;
    let mut series = Vec::with_capacity(times.len());
    for &s in &times {
        solver.advance_to(s)?;
        series.push(observe(&solver));
    }
    solver.advance_to(t_end)?;
    Ok(SolveOutput { series, stats: *solver.stats(), box_radius: solver.state().box_radius })
}

fn observe(s: &Solver<'_>) -> Observation {
    let (x, v_peak) = s.peak();
    let st = s.state();
    Observation { t: st.t, x, v_peak, log_mass: st.log_mass, leak: st.boundary_leak }
}

/// `R(t) = sup{s ≥ 0 : X_t = X_{t+s}}` from a solver series.
///
/// `X_t` is read at the last observation at or before `t`. The first
/// observer interval in which the peak moves is refined by bisection,
/// re-solving from its left end, until the switch time is known to relative
/// accuracy `rel_tol` in the duration.
pub fn residual_lifetime_x(
    field: &PotentialSpec,
    cfg: SolverConfig,
    series: &[Observation],
    t: f64,
    rel_tol: f64,
) -> Result<Residual> {
    let start = series.partition_point(|o| o.t <= t);
    if start == 0 {
        return Err(Error::domain(format!("t = {t} precedes the first observation")));
    }
    let x = series[start - 1].x;
    let Some(k) = series[start..].iter().position(|o| o.x != x).map(|k| k + start) else {
        let last = series.last().expect("non-empty").t;
        return Ok(Residual { value: last - t, censored: true });
    };
    let mut lo = if k == start { t.max(series[k - 1].t) } else { series[k - 1].t };
    let mut hi = series[k].t;
    let mut solver = Solver::new(field, cfg)?;
    solver.advance_to(lo)?;
    if solver.peak().0 != x {
        // the switch happened between the last observation and t
        return Ok(Residual { value: 0.0, censored: false });
    }
    while hi - lo > rel_tol * (hi - t) {
        let mid = 0.5 * (lo + hi);
        let mut probe = solver.clone();
        probe.advance_to(mid)?;
        if probe.peak().0 == x {
            lo = mid;
            solver = probe;
        } else {
            hi = mid;
        }
    }
    Ok(Residual { value: 0.5 * (lo + hi) - t, censored: false })
}
