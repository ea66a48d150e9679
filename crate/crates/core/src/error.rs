use thiserror::Error;

/// Errors raised by the number-theoretic and coding routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be positive")]
    Zero { what: &'static str },

    #[error("{what} = {value} exceeds the supported maximum {max}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("{what} are not coprime (gcd = {gcd})")]
    NotCoprime { what: &'static str, gcd: u64 },

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i64, modulus: u64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("group of order {size} exceeds the enumeration cap {cap} (set GOODINT_MAX_ENUM to raise it)")]
    EnumerationCap { size: u64, cap: u64 },

    #[error("{0} is bad; necessary conditions only apply to good integers")]
    BadInteger(u64),

    #[error("malformed code profile: {0}")]
    MalformedProfile(String),

    #[error("enumeration infeasible: {0}")]
    Infeasible(String),

    #[error("partitions have different weights ({left} vs {right})")]
    UnequalWeight { left: u64, right: u64 },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
