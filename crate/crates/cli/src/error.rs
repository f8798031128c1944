use std::fmt;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(cvop::Error),
    /// Names of the failing checks.
    Validation(Vec<String>),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Validation(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        })
    }
}

impl From<cvop::Error> for CliError {
    fn from(e: cvop::Error) -> Self {
        match e {
            cvop::Error::InvalidParameter(msg) => CliError::Usage(msg),
            e @ cvop::Error::BracketInvalid { .. } => CliError::Usage(e.to_string()),
            e => CliError::Numerical(e),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Validation(names) => write!(f, "validation failed: {}", names.join(", ")),
        }
    }
}
