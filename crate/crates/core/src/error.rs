use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation")]
    Empty,
    #[error("duplicate entry {0}")]
    Duplicate(u32),
    #[error("entry {0} is not a positive integer")]
    NonPositive(String),
    #[error("cannot parse `{0}` as a permutation entry")]
    InvalidToken(String),
    #[error("permutation is not standardized over [n]: {0}")]
    NotStandardized(String),
    #[error("n = {n} exceeds the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("n and t must satisfy n >= t >= {min_t} (got n = {n}, t = {t})")]
    OutOfRange { n: usize, t: usize, min_t: usize },
    #[error("n = {n} and t = {t} must have the same parity")]
    ParityMismatch { n: usize, t: usize },
    #[error("n = {n} and t = {t} must have opposite parity")]
    ParityMatches { n: usize, t: usize },
    #[error("invalid hook ({sw}, {ne}): {reason}")]
    InvalidHook { sw: usize, ne: usize, reason: &'static str },
    #[error("{0} is not uniquely sorted")]
    NotUniquelySorted(String),
    #[error("hotspot is undefined for permutations of length 1")]
    HotspotUndefined,
    #[error("{perm} does not have the extremal left-to-right maxima pattern for t = {t}")]
    NotExtremal { perm: String, t: usize },
    #[error("double factorial is undefined for {0}")]
    NegativeDoubleFactorial(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
