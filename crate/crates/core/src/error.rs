use thiserror::Error;

/// Errors raised by cube-complex operations.
///
/// Domain errors name the violated precondition; `Parse` and `Io` cover the
/// text formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubixError {
    #[error("invalid wall {wall}: {reason}")]
    InvalidWall { wall: String, reason: String },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("wall index {index} out of range (complex has {count} walls)")]
    UnknownWall { index: usize, count: usize },
    #[error("vertex is not in the complex: {0}")]
    UnknownVertex(String),
    #[error("orientation has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("wall indices must be distinct: {0:?}")]
    RepeatedWall(Vec<usize>),
    #[error("empty input: {0}")]
    Empty(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not inseparable: wall {separator} separates {a} and {b}")]
    NotInseparable { separator: usize, a: usize, b: usize },
    #[error("facing triple ({0}, {1}, {2})")]
    FacingTriple(usize, usize, usize),
    #[error("not a geodesic: {0}")]
    NotGeodesic(String),
    #[error("UBS axiom fails: {0}")]
    AxiomFailure(String),
    #[error("crossing graph is disconnected; use separator_check")]
    DisconnectedCrossing,
    #[error("unknown simplex id {0}")]
    UnknownSimplex(usize),
    #[error("invalid family spec: {0}")]
    InvalidFamily(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl CubixError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        CubixError::Parse { line, msg: msg.into() }
    }

    /// True for errors caused by malformed input rather than violated
    /// mathematical preconditions.
    pub fn is_input_error(&self) -> bool {
        matches!(self, CubixError::Parse { .. } | CubixError::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, CubixError>;
