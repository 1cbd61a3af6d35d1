use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("instance dimensions must be positive (got m={m}, n={n})")]
    EmptyDimension { m: usize, n: usize },

    #[error("sum of absolute coefficients does not fit in 64 bits")]
    Overflow,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("fractional component {what}[{index}] = {value} outside [0, 1]")]
    OutOfUnitInterval {
        what: &'static str,
        index: usize,
        value: f64,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("enumeration of 2^{vars} solutions exceeds the cap of 2^{cap}")]
    EnumerationCap { vars: usize, cap: usize },

    #[error("neighborhood of {size} members exceeds the enumeration cap of {cap}")]
    NeighborhoodCap { size: u128, cap: u128 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}
