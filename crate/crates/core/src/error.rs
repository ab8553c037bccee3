use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field order {0}: expected a prime <= 257 or 2^m with 2 <= m <= 8")]
    UnsupportedOrder(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what}: {count} exceeds the enumeration guard of {guard}")]
    GuardExceeded {
        what: &'static str,
        count: String,
        guard: u64,
    },

    #[error("coordinate {index} is out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid recovering family: {0}")]
    InvalidFamily(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
}

impl Error {
    pub(crate) fn guard(what: &'static str, count: impl ToString, guard: u64) -> Self {
        Error::GuardExceeded {
            what,
            count: count.to_string(),
            guard,
        }
    }
}
