use std::fmt;

/// Error carrying the process exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub status: i32,
    pub msg: String,
}

pub type CliResult<T> = Result<T, CliError>;

pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CLAIM: i32 = 3;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { status: EXIT_USAGE, msg: msg.into() }
    }

    pub fn compute(msg: impl Into<String>) -> Self {
        CliError { status: EXIT_COMPUTE, msg: msg.into() }
    }
}

impl From<circdiam::Error> for CliError {
    fn from(e: circdiam::Error) -> Self {
        CliError::compute(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for CliError {}
