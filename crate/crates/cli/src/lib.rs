//! Front end for `coneval-core`: JSON formats, SVG rendering and the
//! `coneval` subcommands.

pub mod commands;
pub mod format;
pub mod svg;

use std::fmt;

/// Errors that end a command with exit status 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<coneval_core::Error> for CliError {
    fn from(e: coneval_core::Error) -> Self {
        match e {
            coneval_core::Error::UnknownSuite(_) => CliError::Usage(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
