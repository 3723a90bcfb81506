use thiserror::Error;

/// Errors raised by the solvers, analyses and report writers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numerical routine failed to converge.
    #[error("numeric error: {routine} did not converge after {iterations} iterations (x={x}, a={a}, b={b}, last relative change {last_delta:e})")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
        x: f64,
        a: f64,
        b: f64,
        last_delta: f64,
    },

    /// A computed result violated an invariant that must always hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
