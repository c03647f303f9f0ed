//! Evaluation harness: metrics, baselines, tamper sweeps, reports.

pub mod baselines;
pub mod corpus;
pub mod metrics;
pub mod similarity;
pub mod sweep;
pub mod tamper;
