use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {label}{rank}: {constraint}")]
    InvalidType {
        label: char,
        rank: usize,
        constraint: String,
    },
    #[error("unknown type label {0:?} (expected one of A, B, C, D, E, F, G)")]
    UnknownLabel(String),
    #[error("simple reflection index {index} out of range 1..={rank}")]
    ReflectionIndex { index: usize, rank: usize },
    #[error("vector has dimension {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("wall set {0:?} does not describe a face of the alcove")]
    InvalidFace(Vec<usize>),
    #[error("root datum does not match the canonical realization: {0}")]
    Mismatch(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_owned(),
            reason: reason.into(),
        }
    }
}
