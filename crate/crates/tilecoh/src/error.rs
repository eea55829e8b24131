use thiserror::Error;

/// Every failure the engine can report. Each variant belongs to one error
/// class, and each class has its own process exit code (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("color {value} out of range in row {row} (expected < {colors})")]
    Range { row: usize, value: i64, colors: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Length { row: usize, found: usize, expected: usize },
    #[error("expansion mismatch: {0} vs {1}")]
    ExpansionMismatch(usize, usize),
    #[error("involution is not compatible with the rule: {0}")]
    IncompatibleInvolution(String),
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("window language lacks shape {0:?}")]
    MissingShape(Vec<usize>),
    #[error("face {0} is not a legal window")]
    IllegalFace(String),
    #[error("uncollared complex requires the rule to force the border (assert it or pass --assume-border)")]
    BorderNotAsserted,
    #[error("chain map identity fails in degree {0}")]
    ChainMapViolation(usize),
    #[error("cochain map does not commute with the coboundary in degree {0}")]
    NotCochainMap(usize),
    #[error("involution does not commute with {0}")]
    NonCommuting(String),
    #[error("cell {cell} in dimension {dim} is fixed with reversed orientation")]
    OrientationReversingFixedCell { dim: usize, cell: usize },
    #[error("cell {cell} in dimension {dim} is mapped to itself but not fixed pointwise")]
    NotPointwiseFixed { dim: usize, cell: usize },
    #[error("eigenvalue {eigenvalue} has eigenspace of dimension {dim}, expected a unique positive vector")]
    NotPrimitiveSpectrum { eigenvalue: i64, dim: usize },
    #[error("cochain is not a cocycle in degree {0}")]
    NotACocycle(usize),
    #[error("cup product degree {0} exceeds dimension {1}")]
    DimensionOverflow(usize, usize),
    #[error("operation requires dimension {expected}, rule has dimension {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("complex check failed: {0}")]
    Verification(String),
    #[error("matrix format error: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for this error class. Zero is reserved for success.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::Json(_) => 10,
            Error::Range { .. } => 11,
            Error::Length { .. } => 12,
            Error::ExpansionMismatch(..) => 13,
            Error::IncompatibleInvolution(_) => 14,
            Error::NotPrimitive => 20,
            Error::MissingShape(_) => 21,
            Error::IllegalFace(_) => 22,
            Error::BorderNotAsserted => 30,
            Error::ChainMapViolation(_) => 31,
            Error::NotCochainMap(_) => 32,
            Error::NonCommuting(_) => 33,
            Error::OrientationReversingFixedCell { .. } => 34,
            Error::NotPointwiseFixed { .. } => 35,
            Error::Verification(_) => 36,
            Error::NotPrimitiveSpectrum { .. } => 40,
            Error::NotACocycle(_) => 41,
            Error::DimensionOverflow(..) => 42,
            Error::WrongDimension { .. } => 43,
            Error::Format(_) | Error::Csv(_) => 50,
            Error::Io(_) => 51,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
