//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("input contains non-finite values")]
    NonFinite,

    #[error("spectrum flagged Hermitian is not conjugate-symmetric")]
    NotHermitian,

    #[error("frequency mask is not conjugate-symmetric")]
    NonHermitianMask,

    #[error("image side {side} is not divisible by 2^{levels}")]
    IndivisibleShape { side: usize, levels: usize },

    #[error("image side {0} must be even")]
    OddSide(usize),

    #[error("wavelet filter is not orthonormal (defect {defect:.3e})")]
    NonOrthonormalFilter { defect: f64 },

    #[error("family is not orthonormal (defect {defect:.3e})")]
    NonOrthonormalBasis { defect: f64 },

    #[error(
        "operator failed semi-orthogonality probe: L L* = {got:.6} Id expected {expected:.6} Id"
    )]
    NotSemiOrthogonal { expected: f64, got: f64 },

    #[error("conjugate gradient did not reach tolerance within {0} iterations")]
    CgStalled(usize),

    #[error("scalar solver did not converge: {0}")]
    ScalarSolver(&'static str),

    #[error("invalid solver configuration: {0}")]
    BadConfig(String),

    #[error("proximity operator {index} failed: {source}")]
    ProxFailed {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed {format} at byte {offset}: {reason}")]
    Malformed {
        format: &'static str,
        offset: usize,
        reason: String,
    },

    #[error("config error: {0}")]
    Config(String),
}
