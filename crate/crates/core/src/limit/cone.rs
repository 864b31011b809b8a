//! The cone process: lower the cone `{y + q(1-1/t)|x| > s}` onto the
//! pattern until it touches a point.

use serde::{Deserialize, Serialize};

use super::pattern::{Point, PointPattern};
use crate::{Error, Result};

/// Strict ordering of two points by score at a common time, ties going to the
/// larger `|x|`.
fn beats(a: &Point, sa: f64, b: &Point, sb: f64) -> bool {
    sa > sb || (sa == sb && a.norm > b.norm)
}

/// Index of the point maximizing `y + q(1-1/t)|x|`, and the maximal value.
pub fn cone_argmax(pattern: &PointPattern, t: f64) -> Result<(usize, f64)> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("cone time must be positive, got {t}")));
    }
    let q = pattern.params.q();
    let mut best: Option<(usize, f64)> = None;
    for (i, p) in pattern.points.iter().enumerate() {
        let s = p.score(q, t);
        match best {
            Some((j, sb)) if !beats(p, s, &pattern.points[j], sb) => {}
            _ => best = Some((i, s)),
        }
    }
    best.ok_or_else(|| Error::domain("cone_argmax on an empty pattern"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    /// Index into the pattern's points.
    pub index: usize,
}

/// Piecewise-constant, right-continuous leader on `[t_lo, t_hi]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConePath {
    pub segments: Vec<Segment>,
    pub t_range: (f64, f64),
}

impl ConePath {
    pub fn leader_at(&self, t: f64) -> Option<usize> {
        let (lo, hi) = self.t_range;
        if !(t >= lo && t <= hi) {
            return None;
        }
        // last segment starting at or before t
        let k = self.segments.partition_point(|s| s.t_start <= t);
        Some(self.segments[k.saturating_sub(1)].index)
    }

    /// Jump times, in order.
    pub fn jump_times(&self) -> Vec<f64> {
        self.segments.iter().skip(1).map(|s| s.t_start).collect()
    }

    pub fn jumps(&self) -> usize {
        self.segments.len() - 1
    }

    /// Leader changes anywhere in `(t_a, t_b]`.
    pub fn changes_in(&self, t_a: f64, t_b: f64) -> bool {
        self.jump_times().iter().any(|&s| s > t_a && s <= t_b)
    }
}

/// Event-driven sweep of the leader from `t_lo` to `t_hi`.
///
/// The leader can only be overtaken by a point further out with larger `w`;
/// a pair `(p, p')` changes order once, at `t = q(|x'|-|x|)/(w'-w)`.
pub fn cone_path(pattern: &PointPattern, t_lo: f64, t_hi: f64) -> Result<ConePath> {
    if !(t_lo > 0.0 && t_lo <= t_hi && t_hi.is_finite()) {
        return Err(Error::domain(format!("cone path needs 0 < t_lo ≤ t_hi, got [{t_lo}, {t_hi}]")));
    }
    let q = pattern.params.q();
    let pts = &pattern.points;
    let (mut cur, _) = cone_argmax(pattern, t_lo)?;
    let mut t = t_lo;
    let mut segments = Vec::new();
    loop {
        let p = &pts[cur];
        let wp = p.w(q);
        let mut next: Option<(usize, f64)> = None;
        for (j, c) in pts.iter().enumerate() {
            let wc = c.w(q);
            if c.norm <= p.norm || wc <= wp {
                continue;
            }
            // rounding can put a crossing marginally before t; fire it now
            let tc = (q * (c.norm - p.norm) / (wc - wp)).max(t);
            let better = match next {
                None => true,
                Some((k, tk)) => tc < tk || (tc == tk && c.norm > pts[k].norm),
            };
            if better {
                next = Some((j, tc));
            }
        }
        match next {
            Some((j, tc)) if tc <= t_hi => {
                if tc > t {
                    segments.push(Segment { t_start: t, t_end: tc, index: cur });
                }
                t = tc;
                cur = j;
            }
            _ => {
                segments.push(Segment { t_start: t, t_end: t_hi, index: cur });
                break;
            }
        }
    }
    Ok(ConePath { segments, t_range: (t_lo, t_hi) })
}

/// Samples of the tip height `Y² + q(1-1/t)|Y¹|` at the requested times.
pub fn tip_process(path: &ConePath, pattern: &PointPattern, times: &[f64]) -> Result<Vec<(f64, f64)>> {
    let q = pattern.params.q();
    times
        .iter()
        .map(|&t| {
            let i = path
                .leader_at(t)
                .ok_or_else(|| Error::domain(format!("time {t} outside the path range")))?;
            Ok((t, pattern.points[i].score(q, t)))
        })
        .collect()
}

/// Tip height at `t` evaluated with a given leader; used for one-sided limits
/// at jump times.
pub fn tip_with(pattern: &PointPattern, index: usize, t: f64) -> f64 {
    pattern.points[index].score(pattern.params.q(), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::Window;
    use crate::ModelParams;

    fn two_points() -> PointPattern {
        PointPattern::from_points(
            ModelParams::preset_line(),
            Window::rect(10.0, 0.1).unwrap(),
            vec![Point::new(vec![0.5], 2.5), Point::new(vec![2.0], 2.0)],
        )
        .unwrap()
    }

    #[test]
    fn two_point_argmax() {
        let p = two_points();
        assert_eq!(cone_argmax(&p, 1.0).unwrap().0, 0);
        assert_eq!(cone_argmax(&p, 2.0).unwrap(), (1, 3.0));
    }

    #[test]
    fn two_point_path_jumps_at_one_and_a_half() {
        let p = two_points();
        let path = cone_path(&p, 1.0, 2.0).unwrap();
        assert_eq!(path.jump_times(), vec![1.5]);
        assert_eq!(path.leader_at(1.4999), Some(0));
        assert_eq!(path.leader_at(1.5), Some(1));
        let left = tip_with(&p, 0, 1.5);
        let right = tip_process(&path, &p, &[1.5]).unwrap()[0].1;
        assert!((left - right).abs() < 1e-12);
    }

    #[test]
    fn single_point_is_one_segment() {
        let p = PointPattern::from_points(
            ModelParams::preset_plane(),
            Window::rect(1.0, 1.0).unwrap(),
            vec![Point::new(vec![0.3, -0.2], 1.0)],
        )
        .unwrap();
        let path = cone_path(&p, 0.5, 9.0).unwrap();
        assert_eq!(path.segments, vec![Segment { t_start: 0.5, t_end: 9.0, index: 0 }]);
    }

    #[test]
    fn empty_pattern_is_an_error() {
        let p = PointPattern::from_points(ModelParams::preset_line(), Window::rect(1.0, 1.0).unwrap(), vec![])
            .unwrap();
        assert!(cone_argmax(&p, 1.0).is_err());
    }
}
