use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {order} exceeds the table bound {bound}")]
    SizeExceeded { order: u128, bound: u64 },
    #[error("element does not belong to the expected field: {0}")]
    FieldMismatch(String),
    #[error("form not admissible: {0}")]
    FormInadmissible(String),
    #[error("gcd(n, q) = gcd({n}, {q}) is not 1")]
    NotCoprime { n: u64, q: u64 },
    #[error("d = {0} must be even")]
    OddD(u32),
    #[error("t = {0} must be even")]
    OddT(u32),
    #[error("q = {0} must be odd")]
    EvenQ(u64),
    #[error("q = {0} must be even")]
    OddQ(u64),
    #[error("k = {0} must be odd")]
    EvenK(u32),
    #[error("bad Witt index or dimension parameter: {0}")]
    BadWittIndex(String),
    #[error("rank r = {0} is too small (need r >= 2)")]
    RankTooSmall(u32),
    #[error("no R-factor case matches delta = {delta}, t = {t}, q = {q}")]
    NoBulletMatches { delta: String, t: u32, q: u64 },
    #[error("division was not exact: {0}")]
    InexactDivision(String),
    #[error("work estimate {estimate} exceeds bound {bound}")]
    WorkBoundExceeded { estimate: String, bound: u64 },
    #[error("reference vector is singular")]
    SingularReference,
    #[error("input pair is degenerate: {0}")]
    DegenerateInput(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by inadmissible user parameters.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::NotPrimePower(_)
                | Error::FormInadmissible(_)
                | Error::NotCoprime { .. }
                | Error::OddD(_)
                | Error::OddT(_)
                | Error::EvenQ(_)
                | Error::OddQ(_)
                | Error::EvenK(_)
                | Error::RankTooSmall(_)
                | Error::InvalidArgument(_)
                | Error::SizeExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
