use thiserror::Error;

/// Errors raised anywhere in the compilation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("product has an imaginary phase and cannot be stored as a signed Pauli string")]
    ImaginaryPhase,

    #[error("row {index} is linearly dependent on the preceding rows")]
    Dependent { index: usize },

    #[error("terms {first} and {second} anticommute")]
    NonCommuting { first: usize, second: usize },

    #[error("set of {size} elements exceeds capacity {capacity}")]
    Capacity { size: usize, capacity: usize },

    #[error("circuit needs {qubits} qubits but the simulator cap is {cap}")]
    QubitCap { qubits: usize, cap: usize },

    #[error("gate `{0}` is not supported here")]
    UnsupportedGate(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("statistic is undefined for an empty partition")]
    EmptyStatistic,

    #[error("duplicate entry `{0}`")]
    Duplicate(String),

    #[error("input table is empty")]
    EmptyTable,

    #[error("register mismatch: {0}")]
    Register(String),

    #[error("line {line}: expected {expected} qubits, found {found}")]
    DimensionAt {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

/// Coarse error classes, used by the command-line front end for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Io,
    Parse,
    Precondition,
    Capacity,
    Verification,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Io(_) => ErrorClass::Io,
            Error::Parse { .. }
            | Error::DimensionAt { .. }
            | Error::Duplicate(_)
            | Error::EmptyTable => ErrorClass::Parse,
            Error::Capacity { .. } | Error::QubitCap { .. } => ErrorClass::Capacity,
            Error::Verification(_) => ErrorClass::Verification,
            _ => ErrorClass::Precondition,
        }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::Dimension { expected, found })
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
