use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("operator is not Hermitian (max |A - A^dag| = {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ensemble is empty")]
    EmptyEnsemble,

    #[error("duplicate message label {0:?}")]
    DuplicateLabel(String),

    #[error("message labels must be nonempty")]
    EmptyLabel,

    #[error("operator for message {label:?} is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { label: String, min_eigenvalue: f64 },

    #[error("ensemble traces sum to {total}, expected 1")]
    Normalization { total: f64 },

    #[error("Bloch vector has norm {norm} > 1")]
    InvalidBloch { norm: f64 },

    #[error("a regular polygon needs at least 2 vertices, got {0}")]
    PolygonTooSmall(usize),

    #[error("unknown polyhedron {0:?}")]
    UnknownPolyhedron(String),

    #[error("no regular polyhedron has {0} vertices")]
    UnsupportedCount(usize),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("rank {rank} out of range 1..={size}")]
    RankOutOfRange { rank: usize, size: usize },

    #[error("probability vector is not normalized (sum {total})")]
    NotNormalized { total: f64 },

    #[error("certificate not enumerable: {size} messages exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("method requires a qubit ensemble with uniform traces")]
    NotQubitUniform,

    #[error("ensemble is not centrally symmetric")]
    NoPairing,

    #[error("invalid ensemble file: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Whether the error means the input was fine but too large for the
    /// requested exhaustive method.
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
