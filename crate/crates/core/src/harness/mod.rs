//! Experiment plumbing: a uniform view of both schemes, JSON file formats,
//! seeded simulations, the naive-reader comparison and brute-force oracles.

pub mod io;
pub mod naive;
pub mod oracle;
pub mod rng;
pub mod scheme;
pub mod simulate;

use thiserror::Error;

use crate::bounds::BoundsError;

pub use scheme::{Scheme, SchemeError};

/// Format version written into every JSON artifact.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: invalid JSON: {message}")]
    Json { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("{needed} candidates exceed the enumeration budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("trial downloaded {downloaded} symbols, above the budget of {budget}")]
    DownloadOverBudget { downloaded: usize, budget: usize },
}

impl HarnessError {
    /// Decode failures map to exit code 1, everything else to 2.
    pub fn is_decode_failure(&self) -> bool {
        matches!(self, HarnessError::Scheme(SchemeError::DecodeFailure(_)))
    }
}
