//! The ageing function `I(θ)` and the Monte Carlo experiments that confront
//! it with the tracker, the lattice solver and the limit process.

mod experiments;
mod itheta;
mod report;
mod stats;

pub use experiments::{
    envelope_experiment, estimate_profile_persistence, estimate_z_persistence, limit_marginals,
    limit_persistence, limit_replica_seed, moderate_deviation_check, replica_seed, residual_law_check,
    scaling_marginal_check, tail_references, z_persistence_run, Envelope, EnvelopeRow, EnvelopeRun, FieldKind,
    LimitPersistence, LimitSample, ModerateDeviation, ProfileOptions, ProfileOutcome, ProfileRun, ResidualLaw,
    ScalingRow, ScalingRun, ZOptions, ZOutcome, ZRun, LIMIT_TAG, LIMIT_TOL,
};
pub use itheta::{i_tail_constants, i_theta, TailConstants};
pub use report::{ExperimentReport, NamedEstimate, Provenance, Reference, Verdict};
pub use stats::{
    ks_critical_one, ks_critical_two, ks_one_sample, ks_two_sample, CensoredSample, Estimate, KS_C_01, KS_C_05,
};
