//! Enumeration and uniform sampling of ℓ¹ balls and shells in `Z^d`.

use rand::Rng;

use crate::analytics::{LatticeSite, MAX_DIM};

fn binom_f64(n: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i as f64) / (i as f64 + 1.0))
}

/// Number of sites with `|z| ≤ r`: `Σ_k 2^k C(d,k) C(r,k)`.
pub fn ball_count(d: usize, r: u64) -> f64 {
    let rf = r as f64;
    (0..=d as u32)
        .map(|k| 2f64.powi(k as i32) * binom_f64(d as f64, k) * binom_f64(rf, k))
        .sum()
}

/// Number of sites with `r_in < |z| ≤ r_out`.
pub fn shell_count(d: usize, r_in: u64, r_out: u64) -> f64 {
    ball_count(d, r_out) - ball_count(d, r_in)
}

/// Visit every site with `|z| ≤ r` in lexicographic order.
pub fn for_each_in_ball<F: FnMut(LatticeSite)>(d: usize, r: u64, mut f: F) {
    assert!((1..=MAX_DIM).contains(&d));
    let mut buf = [0i64; MAX_DIM];
    rec(&mut buf, 0, d, r as i64, &mut f);
}

fn rec<F: FnMut(LatticeSite)>(buf: &mut [i64; MAX_DIM], i: usize, d: usize, rem: i64, f: &mut F) {
    if i + 1 == d {
        for c in -rem..=rem {
            buf[i] = c;
            f(LatticeSite::new(&buf[..d]));
        }
        return;
    }
    for c in -rem..=rem {
        buf[i] = c;
        rec(buf, i + 1, d, rem - c.abs(), f);
    }
}

/// A uniformly distributed site with `r_in < |z| ≤ r_out`, by rejection from
/// the enclosing cube.
pub fn sample_in_shell<R: Rng + ?Sized>(rng: &mut R, d: usize, r_in: u64, r_out: u64) -> LatticeSite {
    assert!(r_out > r_in);
    let r = r_out as i64;
    let mut buf = [0i64; MAX_DIM];
    loop {
        let mut norm = 0u64;
        for c in buf.iter_mut().take(d) {
            *c = rng.random_range(-r..=r);
            norm += c.unsigned_abs();
        }
        if norm > r_in && norm <= r_out {
            return LatticeSite::new(&buf[..d]);
        }
    }
}
