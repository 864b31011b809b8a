use crate::analytics::{LatticeSite, MAX_DIM};

const OUTSIDE: u32 = u32::MAX;

/// The cube `{z : max_i |z_i| ≤ R}` with a precomputed neighbour table.
#[derive(Clone, Debug)]
pub(crate) struct CubeBox {
    pub d: usize,
    pub radius: u64,
    pub side: usize,
    pub sites: Vec<LatticeSite>,
    /// `2d` entries per site; `OUTSIDE` marks a neighbour beyond the box.
    nbr: Vec<u32>,
    /// Number of neighbours outside the box, per site.
    pub outside: Vec<u8>,
}

impl CubeBox {
    pub fn new(d: usize, radius: u64) -> Self {
        let side = 2 * radius as usize + 1;
        let n = side.pow(d as u32);
        let r = radius as i64;
        let mut sites = Vec::with_capacity(n);
        let mut nbr = Vec::with_capacity(n * 2 * d);
        let mut outside = Vec::with_capacity(n);
        let mut stride = [0usize; MAX_DIM];
        for (k, s) in stride.iter_mut().enumerate().take(d) {
            *s = side.pow((d - 1 - k) as u32);
        }
        let mut coords = [0i64; MAX_DIM];
        for idx in 0..n {
            let mut rem = idx;
            for k in 0..d {
                coords[k] = (rem / stride[k]) as i64 - r;
                rem %= stride[k];
            }
            sites.push(LatticeSite::new(&coords[..d]));
            let mut out = 0u8;
            for k in 0..d {
                if coords[k] > -r {
                    nbr.push((idx - stride[k]) as u32);
                } else {
                    nbr.push(OUTSIDE);
                    out += 1;
                }
                if coords[k] < r {
                    nbr.push((idx + stride[k]) as u32);
                } else {
                    nbr.push(OUTSIDE);
                    out += 1;
                }
            }
            outside.push(out);
        }
        CubeBox { d, radius, side, sites, nbr, outside }
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn index_of(&self, z: &LatticeSite) -> Option<usize> {
        let r = self.radius as i64;
        let mut idx = 0usize;
        for &c in z.coords() {
            if c.abs() > r {
                return None;
            }
            idx = idx * self.side + (c + r) as usize;
        }
        Some(idx)
    }

    /// `out = (Δ + ξ) w` with zero boundary values outside the box.
    pub fn apply(&self, xi: &[f64], w: &[f64], out: &mut [f64]) {
        let two_d = 2 * self.d;
        let diag = two_d as f64;
        for i in 0..w.len() {
            let mut acc = (xi[i] - diag) * w[i];
            for &j in &self.nbr[i * two_d..(i + 1) * two_d] {
                if j != OUTSIDE {
                    acc += w[j as usize];
                }
            }
            out[i] = acc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trip() {
        for d in 1..=3 {
            let b = CubeBox::new(d, 2);
            assert_eq!(b.len(), 5usize.pow(d as u32));
            for (i, z) in b.sites.iter().enumerate() {
                assert_eq!(b.index_of(z), Some(i));
            }
            assert_eq!(b.index_of(&LatticeSite::new(&vec![3; d])), None);
        }
    }

    #[test]
    fn laplacian_of_constant_is_boundary_loss() {
        let b = CubeBox::new(2, 3);
        let w = vec![1.0; b.len()];
        let xi = vec![0.0; b.len()];
        let mut out = vec![0.0; b.len()];
        b.apply(&xi, &w, &mut out);
        for i in 0..b.len() {
            assert_eq!(out[i], -(b.outside[i] as f64));
        }
    }
}
