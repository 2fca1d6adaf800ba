use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    Empty,
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("vertices {0} and {1} are comparable")]
    NotAntichain(usize, usize),
    #[error("vertex {0} has a negative coordinate")]
    NegativeCoordinate(usize),
    #[error("vertex {0} has a zero coordinate; suspension needs strictly positive input")]
    NonPositiveCoordinate(usize),
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("vertex {0} is not dominated by the point")]
    NotDominated(usize),
    #[error("surface is not generic")]
    NotGeneric,
    #[error("surface is not suspended")]
    NotSuspended,
    #[error("surface is degenerate")]
    Degenerate,
    #[error("surface is not rigid")]
    NotRigid,
    #[error("order is not graded")]
    NotGraded,
    #[error("point is not characteristic")]
    NotCharacteristic,
    #[error("invalid ball: {0}")]
    InvalidBall(String),
    #[error("invalid plane graph: {0}")]
    InvalidGraph(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("criterion violated: {0}")]
    CriterionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
