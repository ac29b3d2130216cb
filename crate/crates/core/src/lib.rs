//! Exact arithmetic, primality machinery and bounded Diophantine searches for
//! ABC triples whose radical is built from 2 and at most two odd primes.
//!
//! The number-theoretic kernels in [`numeric`] and [`primes`] are generic over
//! the unsigned scalar ([`UInt`]): `u64` and `u128` for desk-scale scans and
//! [`Natural`] (arbitrary precision) for everything that can outgrow a word.
//! Triple quality, the family searches and the lemma oracles sit on top.

pub mod decimal;
pub mod error;
pub mod lemma;
pub mod numeric;
pub mod primes;
pub mod reference;
pub mod scalar;
pub mod search;
pub mod triples;

pub use decimal::Decimal;
pub use error::{Error, Result};
pub use numeric::{FactorBudget, Factorization};
pub use primes::PrimeClass;
pub use scalar::UInt;
pub use search::{Family, FamilyEquation, PrimeRequirement, SearchBounds, Sign, SolutionRecord};
pub use triples::{AbcTriple, QualityReport};

/// Arbitrary-precision natural number, the default scalar for searches.
pub type Natural = num_bigint::BigUint;

/// Factorization of an arbitrary-precision value.
pub type NaturalFactorization = Factorization<Natural>;

/// Factorization of a machine word.
pub type Factorization64 = Factorization<u64>;

/// Factorization of a double machine word.
pub type Factorization128 = Factorization<u128>;
