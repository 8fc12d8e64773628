use thiserror::Error;

pub type Result<T, E = DepthError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum DepthError {
    #[error("data set is empty")]
    EmptyData,

    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("non-finite coordinate in point {index}")]
    NonFinite { index: usize },

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("ball size {size} out of range 1..={max}")]
    BallSizeOutOfRange { size: usize, max: usize },

    #[error("invalid start level {numerator}/{denominator}: must lie in (0, 1]")]
    InvalidStartLevel { numerator: u64, denominator: u64 },

    #[error("operation supports only dimension {supported}, got {found}")]
    UnsupportedDimension {
        supported: &'static str,
        found: usize,
    },

    #[error("instance too large for exact enumeration: n = {n}, d = {d} (limit n <= {max_n}, d <= {max_d})")]
    CostGuard {
        n: usize,
        d: usize,
        max_n: usize,
        max_d: usize,
    },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("negative argument {0} to chi-square cdf")]
    NegativeChiSquare(f64),

    #[error("row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("row {row}, column {column}: cannot parse {value:?} as a number")]
    BadNumber {
        row: usize,
        column: usize,
        value: String,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
