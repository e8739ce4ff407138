use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the form, ideal and lattice layers.
///
/// Values are carried as decimal strings so the error type stays independent
/// of the integer scalar in use.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("{0} is not a discriminant (must be 0 or 1 mod 4)")]
    BadDiscriminant(String),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(String),
    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(String),
    #[error("form {0} is not primitive")]
    NotPrimitive(String),
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(String, String),
    #[error("b1 + b2 = {0} is odd; composition needs equal discriminant parity")]
    OddMiddleSum(String),
    #[error("composition needs a positive leading coefficient, got {0}")]
    NonPositiveLeading(String),
    #[error("ideal norm must be positive, got {0}")]
    NonPositiveNorm(String),
    #[error("d:{d} a:{a} b:{b} is not an ideal of the maximal order (4a does not divide b^2 - d)")]
    NotAnIdeal { d: String, a: String, b: String },
    #[error("invalid range: lo = {lo}, hi = {hi}")]
    InvalidRange { lo: String, hi: String },
    #[error("malformed form {0:?}: expected \"a,b,c\"")]
    MalformedForm(String),
    #[error("d = {d} exceeds the configured limit {max}")]
    LimitExceeded { d: String, max: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}
