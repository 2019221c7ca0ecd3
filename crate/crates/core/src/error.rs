use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A value fell outside the domain a precondition requires.
    #[error("domain error: {name} = {value} is not {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A tolerance below what the selected precision mode can deliver.
    #[error("accuracy error: requested abs_tol {requested:e} is below the {mode} floor {floor:e}")]
    AccuracyUnattainable {
        requested: f64,
        floor: f64,
        mode: &'static str,
    },

    /// The requested boundary/waist pair admits no symmetric marking.
    #[error("inadmissible shape: symmetric-seed discriminant {discriminant} is negative")]
    InadmissibleShape { discriminant: f64 },

    /// A cusped-only operation was invoked on a geodesic-boundary torus.
    #[error("not cusped: boundary commutator trace is {boundary_trace}, expected -2")]
    NotCusped { boundary_trace: f64 },

    /// A finite-difference stencil would step outside the open domain.
    #[error("finite-difference margin violation: coordinate {value} is within step {step} of the domain boundary")]
    FdMargin { value: f64, step: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid cutoff: {0}")]
    InvalidCutoff(String),
}

pub type Result<T> = std::result::Result<T, Error>;
