use thiserror::Error;

use crate::network::LinkId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("unknown link id {0}")]
    UnknownLink(LinkId),

    #[error("system state does not cover exactly the links of the network")]
    StateMismatch,

    #[error("state enumeration refused: {links} links exceeds the limit of {limit}; use Monte Carlo instead")]
    TooManyLinks { links: usize, limit: usize },

    #[error("inclusion-exclusion refused: {count} minpaths exceeds the limit of {limit}")]
    TooManyMinpaths { count: usize, limit: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Errors raised by a method's size guard rather than by bad input.
    pub fn is_guard_refusal(&self) -> bool {
        matches!(self, Error::TooManyLinks { .. } | Error::TooManyMinpaths { .. })
    }
}

/// Network file errors. Every variant names the offending line; problems
/// detected only at end of input use the last line number.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: duplicate link id {id}")]
    DuplicateLink { line: usize, id: LinkId },

    #[error("line {line}: unknown node {node}")]
    UnknownNode { line: usize, node: usize },

    #[error("line {line}: reliability {value} outside [0,1]")]
    ReliabilityOutOfRange { line: usize, value: f64 },

    #[error("line {line}: source and terminal are the same node")]
    SameTerminals { line: usize },

    #[error("line {line}: missing `{directive}` line")]
    Missing { line: usize, directive: char },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
