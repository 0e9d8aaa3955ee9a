use thiserror::Error;

/// Errors surfaced by the solver library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Two grid quantities were combined but live on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A constructor or operation received an out-of-range argument.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The fixed-point inner solver did not reach its stopping tolerance.
    /// `last_diff` is the max-norm difference between the final two iterates;
    /// the step result is discarded, never silently accepted.
    #[error(
        "fixed-point iteration did not converge at step {step}: \
         last successive difference {last_diff:.3e} after {iters} sweeps"
    )]
    NonConvergence {
        step: usize,
        last_diff: f64,
        iters: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
