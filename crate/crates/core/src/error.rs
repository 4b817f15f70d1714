use std::fmt;

use thiserror::Error;

/// Location of a syntax problem in some input text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    pub fn new(line: usize, column: usize) -> Self {
        Self { line, column }
    }

    /// Computes the line/column of byte offset `offset` within `text`.
    pub fn of_offset(text: &str, offset: usize) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Self { line, column }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("qubit index {index} out of range 1..={num_qubits}")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("parse error at {location}: {message}")]
    Parse { location: Location, message: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid leaf path: {0}")]
    InvalidPath(String),

    #[error("precondition failed at qubit {qubit}: {message}")]
    Structure { qubit: usize, message: String },

    #[error("{num_qubits} qubits exceeds the oracle cap of {cap}")]
    OracleCap { num_qubits: usize, cap: usize },

    #[error("oracle found no Pauli image: {0}")]
    OracleInconsistent(String),
}

impl Error {
    pub(crate) fn parse(location: Location, message: impl Into<String>) -> Self {
        Error::Parse {
            location,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
