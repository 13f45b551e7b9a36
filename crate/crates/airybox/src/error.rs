//! Error type shared by all solver layers.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the validated domain of an algorithm
    /// (e.g. an Airy argument beyond the implemented range, a quadrature
    /// order outside 2..=128, a grid too coarse to carry the request).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iteration hit its cap without meeting its tolerance.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// A failure attributed to one eigenstate; `k` names the state (1-based)
    /// so callers can report exactly which level was unreachable.
    #[error("state k = {k}: {source}")]
    State {
        k: usize,
        #[source]
        source: Box<Error>,
    },

    /// Malformed user-facing input (command-line arguments, environment
    /// overrides). Distinct from `Domain` so the CLI can map argument
    /// mistakes and solver failures to different exit codes.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Wraps an error with the eigenstate index it belongs to.
    pub(crate) fn for_state(k: usize, source: Error) -> Self {
        Error::State {
            k,
            source: Box::new(source),
        }
    }
}
