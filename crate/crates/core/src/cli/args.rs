use clap::Args;
use serde::{Deserialize, Serialize};

/// Model and seed, shared by every subcommand.
#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
pub struct ModelArgs {
    /// Lattice dimension.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    /// Pareto index, > d.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ModelArgs {
    fn defaults() -> Self {
        ModelArgs { d: Some(1), alpha: Some(2.0), seed: Some(1) }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct ItArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

impl ItArgs {
    pub fn defaults() -> Self {
        ItArgs { model: ModelArgs::defaults(), theta: Some(1.0) }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct NuArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// ℓ¹ radius of the reference point.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    /// Height of the reference point, > 0.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

impl NuArgs {
    pub fn defaults() -> Self {
        NuArgs { model: ModelArgs::defaults(), theta: Some(0.0), r: Some(0.0), y: Some(1.0) }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct SampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// `rect` (|x| ≤ L, w ≥ u_min) or `cone` (w ≥ m + q|x|/t_hi).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_min: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_hi: Option<f64>,
    /// Nested enlargements applied after the initial sample.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enlarge: Option<u32>,
}

impl SampleArgs {
    pub fn defaults() -> Self {
        SampleArgs {
            model: ModelArgs::defaults(),
            window: Some("rect".into()),
            l: Some(10.0),
            u_min: Some(0.5),
            m: Some(1.0),
            t_hi: Some(2.0),
            enlarge: Some(0),
        }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct ConeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_lo: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_hi: Option<f64>,
    /// Required truncation bound of the sampled window.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

impl ConeArgs {
    pub fn defaults() -> Self {
        ConeArgs { model: ModelArgs::defaults(), t_lo: Some(1.0), t_hi: Some(2.0), tol: Some(1e-6) }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct TrackArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    /// `sparse` or `dense`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// Certified ranks kept by the tracker.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl TrackArgs {
    pub fn defaults() -> Self {
        TrackArgs {
            model: ModelArgs::defaults(),
            t0: Some(2.0),
            t1: Some(200.0),
            field: Some("sparse".into()),
            k: Some(3),
        }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct SolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    /// Evenly spaced observations in (0, t_end].
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_obs: Option<usize>,
    /// Step as a fraction of the stability bound 1/(ξ_max + 4d).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_factor: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_radius: Option<u64>,
    /// Largest number of box sites.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub site_budget: Option<usize>,
}

impl SolveArgs {
    pub fn defaults() -> Self {
        let s = crate::solver::SolverConfig::default();
        SolveArgs {
            model: ModelArgs::defaults(),
            t_end: Some(5.0),
            n_obs: Some(50),
            dt_factor: Some(s.dt_factor),
            initial_radius: Some(s.initial_radius),
            site_budget: Some(s.site_budget),
        }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct PersistArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// `z` (tracker), `profile` (lattice solver) or `limit` (cone process).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    /// Comma-separated window lengths θ.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thetas: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_reps: Option<usize>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// Profile tolerance (kind = profile).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_obs: Option<usize>,
}

impl PersistArgs {
    pub fn defaults() -> Self {
        PersistArgs {
            model: ModelArgs::defaults(),
            kind: Some("z".into()),
            t: Some(1e4),
            thetas: Some(vec![1.0]),
            n_reps: Some(200),
            field: Some("sparse".into()),
            eps: Some(0.1),
            n_obs: Some(200),
        }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct ModDevArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_reps: Option<usize>,
}

impl ModDevArgs {
    pub fn defaults() -> Self {
        ModDevArgs { model: ModelArgs::defaults(), t: Some(1e5), n_reps: Some(500) }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct EnvelopeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// `convergent` (h = (log t)^{2/d}) or `divergent` (h = c).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<u32>,
    /// Residual lifetimes are censored at theta_cap · t.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_cap: Option<f64>,
    /// Replicas for the R(t)/t law; 0 skips it.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_reps: Option<usize>,
    /// Time of the R(t)/t law.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

impl EnvelopeArgs {
    pub fn defaults() -> Self {
        EnvelopeArgs {
            model: ModelArgs::defaults(),
            h: Some("divergent".into()),
            c: Some(1.0),
            kappa: Some(1.0),
            n_grid: Some(12),
            theta_cap: Some(1000.0),
            n_reps: Some(0),
            t: Some(1e6),
        }
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[command(allow_negative_numbers = true)]
pub struct ScalingArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Comma-separated increasing scales T.
    #[arg(long = "big-t", value_delimiter = ',')]
    #[serde(default, rename = "big_t", skip_serializing_if = "Option::is_none")]
    pub big_t: Option<Vec<f64>>,
    /// Comma-separated probe times t.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_probe: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_reps: Option<usize>,
}

impl ScalingArgs {
    pub fn defaults() -> Self {
        ScalingArgs {
            model: ModelArgs::defaults(),
            big_t: Some(vec![1e3, 1e4]),
            t_probe: Some(vec![1.0]),
            n_reps: Some(500),
        }
    }
}
