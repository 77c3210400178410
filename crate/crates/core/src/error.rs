use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {edge:?} repeats vertex {vertex}")]
    RepeatedVertex { edge: Vec<usize>, vertex: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge:?} has size {got}, expected uniformity {expected}")]
    EdgeSize {
        edge: Vec<usize>,
        got: usize,
        expected: usize,
    },
    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("uniformity mismatch: expected {expected}, got {got}")]
    UniformityMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("pattern has {vertices} vertices; exact automorphism counting supports at most {max}")]
    PatternTooLarge { vertices: usize, max: usize },
    #[error("instance is infeasible: {0}")]
    Infeasible(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certificate check failed: {0}")]
    Verification(String),
    #[error("cache integrity error: {0}")]
    Integrity(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
