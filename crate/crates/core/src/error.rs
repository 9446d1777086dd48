use thiserror::Error;

use crate::tableau::SymplecticViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("tableau is not symplectic: {}", format_violations(.0))]
    NotSymplectic(Vec<SymplecticViolation>),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("simulation integrity failure: {0}")]
    SimulationIntegrity(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Re-anchors a parse error produced for a single token at `line`, offsetting its column.
    pub(crate) fn at_line(self, line: usize, column_offset: usize) -> Self {
        match self {
            Error::Parse { column, message, .. } => Error::Parse {
                line,
                column: column + column_offset,
                message,
            },
            Error::NotSymplectic(v) => Error::Parse {
                line,
                column: 0,
                message: format!("tableau is not symplectic: {}", format_violations(&v)),
            },
            Error::Dimension { expected, found } => Error::Parse {
                line,
                column: column_offset,
                message: format!("dimension mismatch: expected {expected}, found {found}"),
            },
            other => other,
        }
    }
}

fn format_violations(v: &[SymplecticViolation]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join("; ")
}
