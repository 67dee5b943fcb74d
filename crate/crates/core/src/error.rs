use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid polytope input: {0}")]
    InvalidInput(String),

    #[error("degenerate point configuration: {0}")]
    Degenerate(String),

    #[error("point {0:?} is not a vertex of the convex hull")]
    RedundantVertex(Vec<i64>),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("incompatible algebra kinds: {0}")]
    IncompatibleKinds(String),

    #[error("exact mode needs {needed} symbolic variables, cap is {cap}")]
    VariableCap { needed: usize, cap: usize },

    #[error("top relative piece has dimension {0}, expected 1")]
    TopPieceNotOneDimensional(usize),

    #[error("normalizing scalar vanished at this specialization")]
    NormalizationDegenerate,

    #[error("interval is not Eulerian: {0}")]
    NotEulerian(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
