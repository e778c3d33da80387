use alloc::string::String;
use core::fmt;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation received an empty point cloud or empty sample.
    EmptyInput,
    /// The brute-force homology oracle was asked for more points than its bound.
    OracleSizeLimit { n: usize, limit: usize },
    /// A persistence diagram with no finite bars cannot be normalized.
    DegenerateDiagram,
    /// A statistic was requested over zero finite bars.
    NoFiniteBars,
    /// All labels belong to a single class.
    DegenerateLabels,
    /// Labels were required but not present.
    MissingLabels,
    /// A class has too few members for the requested number of folds.
    CannotStratify {
        class: usize,
        count: usize,
        folds: usize,
    },
    /// A series of all zeros cannot be normalized to max 1.
    CannotNormalize,
    /// Point dimension does not match what the consumer expects.
    DimensionMismatch { expected: usize, got: usize },
    /// A scalar or count argument is out of its documented range.
    InvalidArgument(&'static str),
    /// A configuration struct violates one of its invariants.
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput => write!(f, "empty input"),
            Error::OracleSizeLimit { n, limit } => {
                write!(f, "oracle size limit: n={n} exceeds limit {limit}")
            }
            Error::DegenerateDiagram => write!(f, "degenerate diagram"),
            Error::NoFiniteBars => write!(f, "no finite bars"),
            Error::DegenerateLabels => write!(f, "degenerate labels"),
            Error::MissingLabels => write!(f, "missing labels"),
            Error::CannotStratify {
                class,
                count,
                folds,
            } => write!(
                f,
                "cannot stratify: class {class} has {count} members, needs at least {folds}"
            ),
            Error::CannotNormalize => write!(f, "cannot normalize"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidConfig(msg) => write!(f, "invalid config: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
