//! Error types shared across the toolkit.

use thiserror::Error;

/// Errors produced by geometry, measure, operator, and analysis routines.
#[derive(Debug, Clone, Error)]
pub enum FraktalError {
    /// Invalid input parameters or malformed data.
    #[error("validation error: {0}")]
    Validation(String),

    /// A configured resource cap (e.g. the prefractal level cap) was exceeded.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// Argument outside the mathematical domain of the operation
    /// (fractional power of a non-positive base, and similar).
    #[error("domain error: {0}")]
    Domain(String),

    /// A window or evaluation point falls outside the sampled grid.
    #[error("range error: {0}")]
    Range(String),

    /// No admissible neighbor exists within the requested F-limit
    /// neighborhood at the sampled resolution.
    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),

    /// A difference quotient has a vanishing staircase increment with a
    /// non-vanishing function increment.
    #[error("divergent quotient: {0}")]
    DivergentQuotient(String),

    /// The requested quadrature mode is not applicable to the operator or
    /// its preconditions fail (e.g. non-monotone data under the analytic
    /// substitution path).
    #[error("quadrature mode error: {0}")]
    Mode(String),

    /// Iterative fitting failed to converge; carries the best iterate.
    #[error("no convergence after {iterations} iterations; best iterate a={a}, b={b}, rss={rss}")]
    Convergence {
        iterations: usize,
        a: f64,
        b: f64,
        rss: f64,
    },
}

pub type Result<T> = std::result::Result<T, FraktalError>;
