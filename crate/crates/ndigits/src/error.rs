use std::fmt;

use ndigits_core::Error;

/// Process exit status of the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Usage = 2,
    Domain = 3,
    Numerical = 4,
}

/// Failure of a front-end operation, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed flags, specs or unreadable input files.
    Usage(String),
    /// Invalid parameters or validation failures.
    Domain(String),
    /// Non-convergent series or points beyond the resolvable tail.
    Numerical(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Domain(_) => ExitCode::Domain,
            CliError::Numerical(_) => ExitCode::Numerical,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::TailExhausted { .. } | Error::NonConvergent { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}
