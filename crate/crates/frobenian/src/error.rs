use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },

    #[error("prime {0} is ramified; Frobenius is undefined")]
    Ramified(u64),

    #[error("degree {needed} exceeds the configured cap {cap}")]
    DegreeCap { needed: usize, cap: usize },

    #[error("brute-force budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("field is not Galois over Q: {0}")]
    NonGalois(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("values live in different fields or groups")]
    FieldMismatch,

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("invalid input: {0}")]
    Input(String),
}
