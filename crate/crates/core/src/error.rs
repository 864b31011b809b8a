use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A lattice box or candidate set would exceed its configured budget.
    #[error("resource limit exceeded: {what} needs {needed} but the budget is {budget}")]
    Resource { what: &'static str, needed: f64, budget: f64 },

    /// Explicit time step above the stability bound.
    #[error("time step {dt} exceeds the stability bound {bound}")]
    Stability { dt: f64, bound: f64 },

    /// A sparse candidate set could not be shown to contain the maximizers.
    #[error("certification failed: {0}")]
    Certification(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
