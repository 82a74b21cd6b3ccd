use thiserror::Error;

use crate::model::{CaseId, Symbol};

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator vanishes in the y-equation{}", case_suffix(.case))]
    ZeroDenominator { case: Option<CaseId> },

    #[error("unknown case index {0}; expected one of 1,2,3,4,5,7,9,10,11,13,17,19,20,22,24,28,32")]
    UnknownCase(u32),

    #[error("case {case} takes {expected} parameters, got {got}")]
    ArityMismatch {
        case: CaseId,
        expected: usize,
        got: usize,
    },

    #[error("parameter {symbol} must be strictly positive and finite, got {value}")]
    NonPositiveParameter { symbol: Symbol, value: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("state ({x}, {y}) is not a finite point of the nonnegative quadrant")]
    InvalidState { x: f64, y: f64 },

    #[error("point is not a fixed point (scaled residual {residual:e})")]
    NotAFixedPoint { residual: f64 },

    #[error("point ({x}, {y}) lies outside the domain of {map}")]
    DomainViolation { map: &'static str, x: f64, y: f64 },

    #[error("case {0} has no conjugacy to a lifted map; its y-equation is autonomous or constant")]
    NotConjugateCase(CaseId),

    #[error("initial condition ({x}, {y}) lies in the forbidden set of case {case}")]
    ForbiddenInitial { case: CaseId, x: f64, y: f64 },

    #[error("no convergence after {iters} iterations")]
    NoConvergence { iters: usize },

    #[error("invalid simulation options: {0}")]
    InvalidOptions(String),
}

fn case_suffix(case: &Option<CaseId>) -> String {
    match case {
        Some(c) => format!(" of case {c}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
