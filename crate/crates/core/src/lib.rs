//! Exact information-theoretic toolkit for multi-user channel coding.
//!
//! The crate computes exact entropic quantities on finite alphabets
//! (entropy, mutual information, conditional mutual information), builds
//! rate-splitting codebooks via the min construction, decides whether a
//! split codebook is successively decodable at a given receiver, computes
//! rate regions for the two-sender Gaussian interference channel under
//! strong interference, models switch-based four-way splits, and runs
//! finite-blocklength Monte Carlo experiments with successive maximum
//! likelihood decoding.
//!
//! All quantities are in bits (log base 2). Values are immutable after
//! construction and all operations are pure functions of their inputs, so
//! everything is safe to share across threads.

use thiserror::Error;

pub mod gaussian;
pub mod io;
pub mod mcsim;
pub mod prob;
pub mod split;
pub mod svg;
pub mod switchsplit;

/// Error type shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    #[error("unknown axis `{0}`")]
    UnknownAxis(String),

    #[error("axis sets overlap on `{0}`")]
    OverlappingAxes(String),

    #[error("epsilon {0} outside [0, 1]")]
    EpsilonOutOfRange(f64),

    #[error("negative snr {0}")]
    NegativeSnr(f64),

    #[error("HK region computation only supported in the strong-interference regime")]
    WeakInterference,

    #[error("codebook budget exceeded: {required} codeword pairs needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
