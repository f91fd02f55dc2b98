use std::fmt;

use scatter_core::ScatterError;

/// A fatal error and the process exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    /// Unreadable or malformed input: exit 1.
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    /// Parameter or shape-contract violation: exit 2.
    pub fn contract(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    /// Unwritable output: exit 3.
    pub fn output(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

impl From<ScatterError> for Failure {
    fn from(e: ScatterError) -> Self {
        match e {
            ScatterError::NonFinite | ScatterError::DataLength { .. } => Failure::input(e.to_string()),
            _ => Failure::contract(e.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
