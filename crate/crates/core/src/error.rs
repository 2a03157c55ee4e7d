use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation (for example `k = 0`).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension {n} exceeds the supported maximum of {max}")]
    Capacity { n: u32, max: u32 },

    #[error("vertex widths differ ({left} vs {right})")]
    WidthMismatch { left: u32, right: u32 },

    #[error("invalid subcube pattern {0}")]
    InvalidPattern(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    /// Interpolated polynomial disagrees with the recursion at a check point.
    #[error("P_{k} on residue class {r} is not a polynomial of degree <= {bound}: mismatch at n = {n}")]
    PolynomialMismatch { k: u32, r: u32, bound: u32, n: u32 },

    /// Two computation paths that must agree did not. Always a bug.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}
