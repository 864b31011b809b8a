use serde::{Deserialize, Serialize};

/// A Monte Carlo estimate with its sampling error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    /// Replicas that contributed.
    pub n: usize,
    /// Replicas that ended in an error and were left out.
    pub failures: usize,
}

impl Estimate {
    /// Proportion estimate from `hits` out of `n`.
    pub fn proportion(hits: usize, n: usize, failures: usize) -> Self {
        if n == 0 {
            return Estimate { value: f64::NAN, stderr: f64::NAN, n, failures };
        }
        let p = hits as f64 / n as f64;
        Estimate { value: p, stderr: (p * (1.0 - p) / n as f64).sqrt(), n, failures }
    }

    /// Sample mean and standard error of the mean.
    pub fn mean(xs: &[f64], failures: usize) -> Self {
        let n = xs.len();
        if n == 0 {
            return Estimate { value: f64::NAN, stderr: f64::NAN, n, failures };
        }
        let m = xs.iter().sum::<f64>() / n as f64;
        let var = if n > 1 { xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64 } else { 0.0 };
        Estimate { value: m, stderr: (var / n as f64).sqrt(), n, failures }
    }

    /// `|value - reference| ≤ max(k·stderr, slack)`.
    pub fn agrees(&self, reference: f64, k: f64, slack: f64) -> bool {
        (self.value - reference).abs() <= (k * self.stderr).max(slack)
    }
}

/// Asymptotic Kolmogorov critical value `c(a)` for level 5 %.
pub const KS_C_05: f64 = 1.3581;
/// Level 1 %.
pub const KS_C_01: f64 = 1.6276;

/// A sample whose values above `cap` are only known to exceed it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CensoredSample {
    pub values: Vec<f64>,
    pub cap: f64,
}

impl CensoredSample {
    pub fn uncensored(values: Vec<f64>) -> Self {
        CensoredSample { values, cap: f64::INFINITY }
    }
}

/// `sup_x |F_n(x) - F(x)|` over `x < cap`. Values at or above `cap` count
/// toward `n` but are never located.
pub fn ks_one_sample<F: FnMut(f64) -> f64>(sample: &CensoredSample, mut cdf: F) -> f64 {
    let mut v: Vec<f64> = sample.values.iter().copied().filter(|x| *x < sample.cap).collect();
    v.sort_by(f64::total_cmp);
    let n = sample.values.len() as f64;
    if n == 0.0 {
        return f64::NAN;
    }
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < v.len() {
        let x = v[i];
        let mut j = i;
        while j < v.len() && v[j] == x {
            j += 1;
        }
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs()).max((j as f64 / n - f).abs());
        i = j;
    }
    if sample.cap.is_finite() {
        // left limit at the cap
        d = d.max((cdf(sample.cap) - v.len() as f64 / n).abs());
    }
    d
}

/// Two-sample statistic `sup_x |F_n(x) - G_m(x)|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut x: Vec<f64> = a.to_vec();
    let mut y: Vec<f64> = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len() as f64, y.len() as f64);
    if n == 0.0 || m == 0.0 {
        return f64::NAN;
    }
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let t = x[i].min(y[j]);
        while i < x.len() && x[i] == t {
            i += 1;
        }
        while j < y.len() && y[j] == t {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Critical value of the one-sample statistic at sample size `n`.
pub fn ks_critical_one(c: f64, n: usize) -> f64 {
    c / (n as f64).sqrt()
}

/// Critical value of the two-sample statistic.
pub fn ks_critical_two(c: f64, n: usize, m: usize) -> f64 {
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}
