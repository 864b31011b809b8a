use serde::{Deserialize, Serialize};

use super::stats::Estimate;
use crate::analytics::ModelParams;
use crate::BUILD_ID;

/// Where a reference value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Exact formula.
    ClosedForm,
    /// Numerical integration of an exact formula.
    Quadrature,
    /// Monte Carlo over the limit process.
    LimitProcess,
    /// Allowance frozen at first build for an asymptotic statement.
    RegressionBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub name: String,
    pub value: f64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedEstimate {
    pub name: String,
    #[serde(flatten)]
    pub estimate: Estimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Machine-readable summary of one experiment run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub build_id: String,
    pub params: ModelParams,
    pub config: serde_json::Value,
    pub seed: u64,
    pub replicas: usize,
    /// How replica seeds derive from `seed`.
    pub seed_rule: String,
    pub estimates: Vec<NamedEstimate>,
    pub references: Vec<Reference>,
    pub verdicts: Vec<Verdict>,
}

impl ExperimentReport {
    pub fn new(name: &str, params: ModelParams, config: serde_json::Value, seed: u64, replicas: usize) -> Self {
        ExperimentReport {
            name: name.to_string(),
            build_id: BUILD_ID.to_string(),
            params,
            config,
            seed,
            replicas,
            seed_rule: "replica i uses key(seed, [i]); limit-process replica i uses key(seed, [LIMIT, i])"
                .to_string(),
            estimates: Vec::new(),
            references: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn estimate(&mut self, name: impl Into<String>, estimate: Estimate) -> &mut Self {
        self.estimates.push(NamedEstimate { name: name.into(), estimate });
        self
    }

    pub fn reference(&mut self, name: impl Into<String>, value: f64, provenance: Provenance) -> &mut Self {
        self.references.push(Reference { name: name.into(), value, provenance });
        self
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict { name: name.into(), pass, detail: detail.into() });
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}
