//! Log-gamma, Beta and the regularized incomplete Beta function.

use crate::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        let s = (std::f64::consts::PI * x).sin();
        return std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

pub fn beta(a: f64, b: f64) -> f64 {
    ln_beta(a, b).exp()
}

/// Regularized incomplete Beta function `B̃(x; a, b)`.
///
/// Continued fraction (modified Lentz) on the side `x ≤ a/(a+b)`, and the
/// reflection `B̃(x; a, b) = 1 - B̃(1-x; b, a)` on the other.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("incomplete beta argument {x} outside [0,1]")));
    }
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("incomplete beta needs a, b > 0, got ({a}, {b})")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    if x > a / (a + b) {
        Ok(1.0 - lower_cf(1.0 - x, b, a))
    } else {
        Ok(lower_cf(x, a, b))
    }
}

fn lower_cf(x: f64, a: f64, b: f64) -> f64 {
    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta(a, b) - a.ln();
    ln_front.exp() * beta_cf(x, a, b)
}

fn beta_cf(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_integers_and_half() {
        let mut fact = 1.0f64;
        for n in 1..30 {
            fact *= n as f64;
            let got = ln_gamma(n as f64 + 1.0);
            assert!((got - fact.ln()).abs() <= 1e-13 * fact.ln().max(1.0), "n={n}");
        }
        let half = ln_gamma(0.5);
        assert!((half - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        assert!(ln_gamma(1.0).abs() < 1e-15);
        assert!(ln_gamma(2.0).abs() < 1e-15);
    }

    #[test]
    fn beta_small_values() {
        assert!((beta(2.0, 1.0) - 0.5).abs() < 1e-15);
        assert!((beta(2.0, 2.0) - 1.0 / 6.0).abs() < 1e-15);
        assert!((beta(3.0, 2.0) - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn inc_beta_examples() {
        assert_eq!(reg_inc_beta(1.0, 3.5, 0.7).unwrap(), 1.0);
        assert_eq!(reg_inc_beta(0.0, 3.5, 0.7).unwrap(), 0.0);
        assert!((reg_inc_beta(0.5, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((reg_inc_beta(0.25, 2.0, 1.0).unwrap() - 0.0625).abs() < 1e-15);
        // B̃(x; 2, 2) = 3x² - 2x³
        for &x in &[0.1, 0.4, 0.5, 0.6, 0.93] {
            let want = 3.0 * x * x - 2.0 * x * x * x;
            assert!((reg_inc_beta(x, 2.0, 2.0).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn inc_beta_rejects_bad_input() {
        assert!(reg_inc_beta(-0.1, 1.0, 1.0).is_err());
        assert!(reg_inc_beta(1.1, 1.0, 1.0).is_err());
        assert!(reg_inc_beta(0.5, 0.0, 1.0).is_err());
        assert!(reg_inc_beta(0.5, 1.0, -2.0).is_err());
    }
}
