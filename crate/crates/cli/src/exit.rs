use std::fmt;

use mmle::Error;

pub const FAILED_CHECKS: i32 = 1;
pub const USAGE: i32 = 2;
pub const DEGENERATE: i32 = 3;
pub const DOMAIN: i32 = 4;
pub const NON_CONVERGENCE: i32 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: USAGE, message: message.into() }
    }

    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Self::usage(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Exit code for a library error raised while estimating.
pub fn code_for(err: &Error) -> i32 {
    match err {
        Error::DegenerateSample | Error::InsufficientData { .. } => DEGENERATE,
        Error::Domain { .. } | Error::OutOfSupport { .. } | Error::InvalidParameter { .. } => DOMAIN,
        Error::NonConvergence { .. } => NON_CONVERGENCE,
        Error::SingularMatrix { .. } | Error::NonFiniteIntegrand { .. } => DOMAIN,
        Error::Config(_) => USAGE,
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        Self { code: code_for(&err), message: err.to_string() }
    }
}
