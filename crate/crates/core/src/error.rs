use thiserror::Error;

/// Errors raised by the library.
///
/// `Parse` is a malformed input text; everything else is a value outside the
/// domain of the requested operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from `{token}`")]
    Parse { what: &'static str, token: String },
    #[error("{0} is not in Q^odd (numerator and denominator must both be odd)")]
    NotOdd(String),
    #[error("2-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("3a+1 vanishes at a = -1/3; the Collatz step is undefined there")]
    Vanishing,
    #[error("partial quotients must be positive, got {0}")]
    ZeroQuotient(u64),
    #[error("cycle must be nonempty")]
    EmptyCycle,
    #[error("sequence item {0} is not 1 or 2")]
    NotBinaryDigit(u64),
    #[error("sequence must be nonempty")]
    EmptySequence,
    #[error("depth {depth} exceeds the limit {limit}")]
    DepthLimit { depth: usize, limit: usize },
    #[error("viewport is empty: need xmin < xmax and ymin < ymax")]
    EmptyViewport,
    #[error("line through (1,-1) and {0} is parallel to y = x")]
    ParallelLine(String),
    #[error("{0}")]
    OutOfDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
