//! Experiment harness around the fractional NLS solver.
//!
//! The harness reads flat `key = value` configuration files, orchestrates the
//! experiments (plain runs, conservation studies, temporal and spatial
//! convergence sweeps, oracle verification), and emits deterministic CSV:
//! identical configurations produce identical bytes on a fixed platform.

pub mod config;
pub mod csvout;
pub mod experiments;
pub mod oracle;

use std::fmt;

/// Harness-level errors, mapped onto the process exit codes:
/// configuration/input problems exit 1, solver non-convergence exits 2,
/// oracle failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(fnls::Error),
    Oracle(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Solver(fnls::Error::NonConvergence { .. }) => 2,
            CliError::Solver(_) => 1,
            CliError::Oracle(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Solver(err) => write!(f, "solver error: {err}"),
            CliError::Oracle(msg) => write!(f, "oracle failure: {msg}"),
            CliError::Io(err) => write!(f, "io error: {err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fnls::Error> for CliError {
    fn from(err: fnls::Error) -> Self {
        CliError::Solver(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 1);
        assert_eq!(CliError::Io(std::io::Error::other("x")).exit_code(), 1);
        assert_eq!(
            CliError::Solver(fnls::Error::NonConvergence {
                step: 3,
                last_diff: 1.0,
                iters: 7,
            })
            .exit_code(),
            2
        );
        assert_eq!(
            CliError::Solver(fnls::Error::InvalidParameter("x".into())).exit_code(),
            1
        );
        assert_eq!(CliError::Oracle("x".into()).exit_code(), 3);
    }
}
