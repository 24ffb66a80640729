use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a mathematical domain constraint.
    #[error("domain error: {0}")]
    Domain(String),

    /// Vector or matrix dimensions do not match.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A value lies outside the range of the selected monotone branch.
    #[error("out of branch range: {0}")]
    OutOfRange(String),

    /// A ratio of divergences is undefined (infinite or zero denominator).
    #[error("ratio undefined: {0}")]
    RatioUndefined(String),

    /// Bracketing for a root search failed.
    #[error("bracketing failure: {0}")]
    Bracketing(String),

    /// The capacity solver failed to reach the certified gap tolerance.
    /// The best feasible iterate found is attached.
    #[error(
        "solver did not converge after {iterations} iterations \
         (best value {best_value}, certified gap {gap})"
    )]
    NoConvergence {
        best_value: f64,
        gap: f64,
        iterations: u64,
        best_input: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
