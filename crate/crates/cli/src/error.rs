//! Error-to-exit-code mapping: 0 success/all-passed, 1 claim refuted,
//! 2 invalid input, 3 resource cap exceeded.

use std::fmt;
use std::io;

use candy_core::{SweepError, TrajectoryError};

pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Bad parameters, unmet claim hypotheses, infeasible families.
    Invalid(String),
    /// A round cap or counting range was exhausted mid-computation.
    Resource(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Io(_) => EXIT_INVALID,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) | CliError::Resource(msg) => f.write_str(msg),
            CliError::Io(e) => write!(f, "i/o failure: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::CountOverflow { .. } | SweepError::CapExceeded { .. } => {
                CliError::Resource(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<TrajectoryError> for CliError {
    fn from(e: TrajectoryError) -> Self {
        CliError::Resource(e.to_string())
    }
}
