use thiserror::Error;

use crate::numeric::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("partitions cover different sets")]
    DomainMismatch,

    #[error("{what} cannot be evaluated exactly at {x}")]
    NotExactlyEvaluable { what: &'static str, x: Rational },

    #[error("{x} lies outside the domain of {what}")]
    OutsideDomain { what: &'static str, x: Rational },

    #[error("construction failed: {0}")]
    ConstructionFailure(String),

    #[error("Lipschitz bound {} violated between {} and {}", .0.c, .0.x, .0.y)]
    LipschitzViolated(Box<LipschitzWitness>),

    #[error("duplicate point at sample index {0}")]
    DuplicatePoint(usize),

    #[error("inequality violated: {0}")]
    InequalityViolated(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Constant and pair of points at which `|f(x) - f(y)| <= c |x - y|` fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LipschitzWitness {
    pub c: Rational,
    pub x: Rational,
    pub y: Rational,
}

pub type Result<T> = std::result::Result<T, Error>;
