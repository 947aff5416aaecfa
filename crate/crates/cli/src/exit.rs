use std::fmt;

use hyperb_core::Error;

/// Process exit codes; part of the stable interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    /// A checked statement failed, or a coloring is not a b-coloring.
    Violations = 1,
    Io = 2,
    Infeasible = 3,
    /// The solver budget ran out; a partial result was still written.
    Budget = 4,
    Usage = 64,
}

#[derive(Debug)]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Usage,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Io,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Infeasible(_) | Error::Overflow(_) => ExitStatus::Infeasible,
            Error::Integrity(_) => ExitStatus::Violations,
            _ => ExitStatus::Usage,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}
