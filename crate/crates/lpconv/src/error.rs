//! Error type shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent p = {p} outside the accepted interval [{min}, {max}]")]
    ExponentOutOfRange { p: f64, min: f64, max: f64 },

    #[error("{name} = {value} violates {constraint}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("comparison ratio is singular at u = {u} (|u - 1| < {guard})")]
    RatioSingularity { u: Complex64, guard: f64 },

    #[error("non-finite value encountered at u = {u}")]
    NonFiniteSample { u: Complex64 },

    #[error("{name} contains a non-finite entry at index {index}")]
    NonFiniteEntry { name: &'static str, index: usize },

    #[error("functions live on different measure spaces")]
    SpaceMismatch,

    #[error("measure space must have between 1 and {max} atoms, got {got}")]
    BadAtomCount { got: usize, max: usize },

    #[error("atom weight at index {index} must be strictly positive and finite, got {weight}")]
    BadWeight { index: usize, weight: f64 },

    #[error("values length {got} does not match atom count {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("{name} must have norm 1 within {tol}, got {norm}")]
    NotNormalized {
        name: &'static str,
        norm: f64,
        tol: f64,
    },

    #[error("precondition failed at atom {index}: {detail}")]
    AtomPrecondition { index: usize, detail: String },

    #[error("no feasible point found across all restarts")]
    NoFeasiblePoint,

    #[error("chain entry '{0}' missing; cannot replay budget")]
    MissingChainEntry(String),

    #[error("budget certifies {got} but {expected} is required")]
    BudgetStatementMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("invalid witness document: {0}")]
    WitnessFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
