use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime below 2^62")]
    NotPrime(u64),
    #[error("prime {p} divides a coefficient denominator")]
    BadReduction { p: u64 },
    #[error("characteristic {p} is too small for degree {degree}")]
    SmallCharacteristic { p: u64, degree: usize },
    #[error("prime {p} is too small for degree {degree}")]
    SmallPrime { p: u64, degree: usize },
    #[error("prime {p} divides d - 1 = {}", degree - 1)]
    BadCharacteristic { p: u64, degree: usize },
    #[error("derivative has degree {found}, expected {expected}")]
    DegenerateDerivative { expected: usize, found: usize },
    #[error("splitting field has degree {degree}, above the cap {cap}")]
    ExtensionTooLarge { degree: usize, cap: usize },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("value set contains duplicates")]
    DuplicateValues,
    #[error("no good prime among the certificate primes")]
    NoGoodPrime,
    #[error("prime {p} exceeds the table cap {cap}")]
    PrimeTooLarge { p: u64, cap: u64 },
    #[error("no sum table for prime {0}")]
    MissingTable(u64),
    #[error("modulus {0} is not squarefree")]
    NonSquarefree(u64),
    #[error("input is not a probability measure: {0}")]
    NotAMeasure(String),
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
