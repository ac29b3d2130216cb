use thiserror::Error;

use crate::Natural;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization budget exhausted on composite cofactor {cofactor}")]
    BudgetExceeded { cofactor: Natural },
    #[error("exponent {0} is not prime")]
    NotPrimeExponent(u64),
    #[error("{0} is not prime")]
    NotPrime(Natural),
    #[error("bound {value} exceeds the limit {limit} for {what}")]
    BoundTooLarge { what: &'static str, value: u64, limit: u64 },
    #[error("no two of ({0}, {1}, {2}) sum to the third")]
    NotASum(Natural, Natural, Natural),
    #[error("summands {0} and {1} are not coprime")]
    NotCoprime(Natural, Natural),
    #[error("summands are equal ({0} + {0})")]
    DegenerateEqualSummands(Natural),
    #[error("S = g^u - h^v is not positive")]
    NonPositiveS,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
