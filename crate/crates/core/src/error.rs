use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value is not rational: {0}")]
    NonRational(String),
    #[error("unsupported root system type {letter}{rank}")]
    UnsupportedType { letter: char, rank: usize },
    #[error("lattice is not generated by its norm-2 vectors")]
    NotRootGenerated,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("vector is not of minimal norm in its coset")]
    NotMinimal,
    #[error("lattice chain violated: {0}")]
    ChainViolation(String),
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("not a conformal vector: {0}")]
    NotConformal(String),
    #[error("root lattice does not embed in the context lattice: {0}")]
    EmbeddingError(String),
    #[error("eigenvalue outside the allowed set: {0}")]
    BadSpectrum(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("module vector is not supported on minimal-norm vectors")]
    LeavesMinimalSpace,
    #[error("table mismatch at node {node}: computed {computed}, expected {expected}")]
    TableMismatch { node: usize, computed: String, expected: String },
    #[error("code check failed: {0}")]
    CodeCheckFailed(String),
    #[error("embedding not found: {0}")]
    EmbeddingNotFound(String),
    #[error("coset representative does not match any listed shape: {0}")]
    ShapeMismatch(String),
    #[error("enumeration exceeded its time budget of {0} s")]
    BudgetExceeded(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
