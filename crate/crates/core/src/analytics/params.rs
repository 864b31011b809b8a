use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::special::{beta, ln_gamma};
use crate::{Error, Result};

/// Largest lattice dimension supported by [`LatticeSite`].
pub const MAX_DIM: usize = 4;

/// Dimension and Pareto tail index, plus the constants derived from them.
///
/// Only `d` and `alpha` are serialized; the derived fields are recomputed on
/// deserialization so a config file can never carry inconsistent constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsRepr", into = "ParamsRepr")]
pub struct ModelParams {
    d: u32,
    alpha: f64,
    q: f64,
    theta_const: f64,
    i_tail_const: f64,
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    d: u32,
    alpha: f64,
}

impl TryFrom<ParamsRepr> for ModelParams {
    type Error = Error;

    fn try_from(r: ParamsRepr) -> Result<Self> {
        ModelParams::new(r.d, r.alpha)
    }
}

impl From<ModelParams> for ParamsRepr {
    fn from(p: ModelParams) -> Self {
        ParamsRepr { d: p.d, alpha: p.alpha }
    }
}

impl ModelParams {
    /// Requires `1 ≤ d ≤ MAX_DIM` and `alpha > d`; below that the Cauchy
    /// problem has no nonnegative solution.
    pub fn new(d: u32, alpha: f64) -> Result<Self> {
        if d == 0 || d as usize > MAX_DIM {
            return Err(Error::domain(format!("dimension must be in 1..={MAX_DIM}, got {d}")));
        }
        if !alpha.is_finite() || alpha <= d as f64 {
            return Err(Error::domain(format!("tail index must exceed d = {d}, got {alpha}")));
        }
        let df = d as f64;
        let q = df / (alpha - df);
        let ln_fact = ln_gamma(df); // ln (d-1)!
        let theta_const =
            (df * std::f64::consts::LN_2 + beta(alpha - df, df).ln() - df * q.ln() - ln_fact).exp();
        let i_tail_const = 1.0 / (df * beta(alpha - df + 1.0, df));
        let p = ModelParams { d, alpha, q, theta_const, i_tail_const };
        if ![q, theta_const, i_tail_const].iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(Error::domain(format!("derived constants degenerate for d={d}, alpha={alpha}")));
        }
        Ok(p)
    }

    /// `(d, α) = (1, 2)`, so `q = 1`.
    pub fn preset_line() -> Self {
        Self::new(1, 2.0).expect("valid preset")
    }

    /// `(d, α) = (2, 4)`, so `q = 1`.
    pub fn preset_plane() -> Self {
        Self::new(2, 4.0).expect("valid preset")
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.d as usize
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `q = d / (α - d)`.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// `ϑ = 2^d B(α-d, d) / (q^d (d-1)!)`, the prefactor of `ν(D_θ(r, y))`.
    pub fn theta_const(&self) -> f64 {
        self.theta_const
    }

    /// `1 / (d B(α-d+1, d))`, the limit of `θ^d I(θ)`.
    pub fn i_tail_const(&self) -> f64 {
        self.i_tail_const
    }

    /// Surface factor of the ℓ¹ sphere: `d/dr Vol(B_r) = 2^d r^{d-1} / (d-1)!`.
    pub(crate) fn l1_surface_factor(&self) -> f64 {
        let df = self.d as f64;
        (df * std::f64::consts::LN_2 - ln_gamma(df)).exp()
    }
}

/// A site of `Z^d` together with its ℓ¹ norm.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeSite {
    coords: [i64; MAX_DIM],
    dim: u8,
    l1: u64,
}

impl LatticeSite {
    pub fn new(coords: &[i64]) -> Self {
        assert!(
            !coords.is_empty() && coords.len() <= MAX_DIM,
            "lattice dimension must be in 1..={MAX_DIM}"
        );
        let mut c = [0i64; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        let l1 = coords.iter().map(|x| x.unsigned_abs()).sum();
        LatticeSite { coords: c, dim: coords.len() as u8, l1 }
    }

    pub fn origin(d: usize) -> Self {
        Self::new(&vec![0; d])
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim as usize]
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// `|z| = Σ |z_i|`.
    pub fn l1_norm(&self) -> u64 {
        self.l1
    }

    /// Deterministic tie-break between two sites with equal score: the
    /// larger ℓ¹ norm wins, then the lexicographically smaller coordinates.
    /// Returns `Ordering::Greater` when `self` wins.
    pub fn tie_break(&self, other: &Self) -> Ordering {
        self.l1
            .cmp(&other.l1)
            .then_with(|| other.coords().cmp(self.coords()))
    }

    /// Coordinates joined by `;`, as used in CSV exports.
    pub fn to_csv_field(&self) -> String {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        parts.join(";")
    }
}

impl fmt::Debug for LatticeSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

impl fmt::Display for LatticeSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LatticeSite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeSite {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<i64> = Vec::deserialize(d)?;
        if v.is_empty() || v.len() > MAX_DIM {
            return Err(serde::de::Error::custom(format!(
                "site must have 1..={MAX_DIM} coordinates"
            )));
        }
        Ok(LatticeSite::new(&v))
    }
}
