use num_bigint::BigInt;
use thiserror::Error;

use crate::numth::Rational;
use crate::poly::Poly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(BigInt, BigInt),
    #[error("bad prime {0}: it divides a denominator")]
    BadPrime(u64),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("positive-dimensional ideal")]
    PositiveDimensional,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("polynomial is not squarefree modulo {0}")]
    NotSquarefree(u64),
    #[error("factors are not coprime modulo {0}")]
    NotCoprime(u64),
    #[error("records disagree on leading data; filter unlucky primes first")]
    MismatchedRecords,
    #[error("no further separator exists: the given ideals are not distinct")]
    NoSeparator,
    /// The round limit was hit; `candidate` is the last lifted basis, if any.
    #[error("gave up after {rounds} rounds: {detail}")]
    MaxRounds { rounds: usize, detail: String, candidate: Option<Vec<Poly<Rational>>> },
    #[error("task for prime {prime} panicked: {message}")]
    TaskPanicked { prime: u64, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}
