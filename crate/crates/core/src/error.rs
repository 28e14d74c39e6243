use thiserror::Error;

use crate::roots::RootSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value left the finite range of the working precision.
    #[error("range error: {0}")]
    Range(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("ill-conditioned input: {0}")]
    IllConditioned(String),

    /// The root finder hit its iteration cap. The partial root set is kept
    /// so callers can inspect how far it got.
    #[error("root finder did not converge after {iterations} iterations ({unconverged} roots unconverged)")]
    Convergence {
        iterations: usize,
        unconverged: usize,
        partial: Box<RootSet>,
    },

    /// A root-finder failure inside a scan over GKZ degrees.
    #[error("while processing degree n = {n}: {source}")]
    AtDegree {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("degree {degree} exceeds truncation order {order}")]
    Truncation { degree: usize, order: usize },

    #[error("enumeration too large: {count} terms exceeds guard {limit}")]
    Size { count: String, limit: u64 },

    #[error("functional is not normalized: F(1) = {0}")]
    NotNormalized(String),

    /// A hypothesis of the weighted-composition reduction fails at a grid point.
    #[error("hypothesis violation at grid point {index} ({point}): {reason}")]
    HypothesisViolation {
        index: usize,
        point: String,
        reason: String,
    },

    #[error("range violation at grid point {index} ({point}): |phi| = {modulus} >= r = {radius}")]
    RangeViolation {
        index: usize,
        point: String,
        modulus: f64,
        radius: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at_degree(n: usize, err: Error) -> Self {
        Error::AtDegree {
            n,
            source: Box::new(err),
        }
    }
}
