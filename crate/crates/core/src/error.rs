use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed edge-list line (1-based line number).
    #[error("line {line}: {message}")]
    ParseLine { line: usize, message: String },

    /// Malformed bracket text (0-based byte offset).
    #[error("offset {offset}: {message}")]
    ParseBracket { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Validation(String),

    /// A configurable size cap would be exceeded.
    #[error("resource cap exceeded: {what} would exceed {cap}{hint}")]
    Resource { what: &'static str, cap: u64, hint: String },

    #[error("graph is disconnected: vertex {unreachable} is unreachable from vertex {from}")]
    Disconnected { from: usize, unreachable: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("operation requires a full-chains projection")]
    UnsupportedMode,
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn resource(what: &'static str, cap: u64) -> Self {
        Error::Resource {
            what,
            cap,
            hint: String::new(),
        }
    }

    /// True for the errors a caller should treat as "input too large".
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
