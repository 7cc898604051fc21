use thiserror::Error;

/// Every failure mode surfaced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("degenerate deformation: {0}")]
    DegenerateDeformation(String),
    #[error("spin {spin} exceeds the maximal allowed spin (dimension {dim} > {bound})")]
    SpinTooLarge { spin: String, dim: usize, bound: usize },
    #[error("action leaves the truncated polynomial space: {0}")]
    NotClosed(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("malformed representation: {0}")]
    MalformedRep(String),
    #[error("tensor product of an empty list of factors")]
    EmptyProduct,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("Casimir has eigenvalues outside the candidate set (residual dimension {residual} at weight {weight})")]
    UnknownEigenvalue { residual: usize, weight: String },
    #[error("fingerprint library bootstrap failed: {0}")]
    BootstrapFailed(String),
    #[error("summand typing is ambiguous: {0}")]
    AmbiguousTyping(String),
    #[error("explicit splitting failed after {attempts} attempts: {reason}")]
    SplitFailed { attempts: usize, reason: String },
    #[error("unrecognised summand: {0}")]
    UnknownSummand(String),
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    CapExceeded { dim: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
