use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numeric::FactorBudget;
use crate::primes::{enumerate_fermat, enumerate_mersenne, is_prime, FERMAT_INDEX_GUARD, MERSENNE_EXPONENT_GUARD};
use crate::Natural;

/// Which odd primes of a solution must be Mersenne or Fermat primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PrimeRequirement {
    BothMf,
    #[default]
    OneMf,
    None,
}

impl fmt::Display for PrimeRequirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeRequirement::BothMf => "both",
            PrimeRequirement::OneMf => "one",
            PrimeRequirement::None => "none",
        })
    }
}

impl FromStr for PrimeRequirement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" | "both_mf" => Ok(PrimeRequirement::BothMf),
            "one" | "one_mf" => Ok(PrimeRequirement::OneMf),
            "none" => Ok(PrimeRequirement::None),
            _ => Err(Error::Parse(format!("unknown prime requirement {s:?}"))),
        }
    }
}

/// Explicit limits for every search.
///
/// Candidate values stay below `2^max_c_bits`. The "Mersenne/Fermat pool"
/// is every Mersenne prime with exponent at most `mersenne_exp_cap` and
/// every Fermat prime `F_w` with `w <= fermat_w_cap`, unless `prime_pool`
/// overrides it. Families b and c enumerate powers of pool primes and test
/// the partner side for being a prime power; under
/// [`PrimeRequirement::None`] the odd primes up to `free_prime_cap` are
/// enumerated as well, so that mode is exhaustive only for solutions with
/// one prime in that range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_m: u32,
    pub max_n: u32,
    pub max_r: u32,
    pub max_c_bits: u32,
    pub prime_requirement: PrimeRequirement,
    pub mersenne_exp_cap: u32,
    pub fermat_w_cap: u32,
    pub prime_pool: Option<Vec<Natural>>,
    pub free_prime_cap: u64,
    pub budget: FactorBudget,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            max_m: 64,
            max_n: 64,
            max_r: 64,
            max_c_bits: 128,
            prime_requirement: PrimeRequirement::OneMf,
            mersenne_exp_cap: 61,
            fermat_w_cap: 4,
            prime_pool: None,
            free_prime_cap: 1000,
            budget: FactorBudget::default(),
        }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("max_m", self.max_m),
            ("max_n", self.max_n),
            ("max_r", self.max_r),
            ("max_c_bits", self.max_c_bits),
            ("mersenne_exp_cap", self.mersenne_exp_cap),
        ];
        if let Some((name, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidBounds(format!("{name} must be positive")));
        }
        if u64::from(self.mersenne_exp_cap) > MERSENNE_EXPONENT_GUARD {
            return Err(Error::InvalidBounds(format!("mersenne_exp_cap above {MERSENNE_EXPONENT_GUARD}")));
        }
        if self.fermat_w_cap > FERMAT_INDEX_GUARD {
            return Err(Error::InvalidBounds(format!("fermat_w_cap above {FERMAT_INDEX_GUARD}")));
        }
        if let Some(pool) = &self.prime_pool {
            if pool.is_empty() {
                return Err(Error::InvalidBounds("prime pool is empty".into()));
            }
            if let Some(p) = pool.iter().find(|p| !p.bit(0) || !is_prime(*p)) {
                return Err(Error::InvalidBounds(format!("pool entry {p} is not an odd prime")));
            }
        }
        Ok(())
    }

    /// Exclusive upper limit on every member of a triple.
    pub fn c_limit(&self) -> Natural {
        BigUint::one() << self.max_c_bits
    }

    /// The Mersenne/Fermat pool (or its override), ascending and distinct.
    pub fn pool(&self) -> Result<Vec<Natural>> {
        let mut pool = match &self.prime_pool {
            Some(p) => p.clone(),
            None => {
                let mut v: Vec<Natural> =
                    enumerate_mersenne(u64::from(self.mersenne_exp_cap))?.into_iter().map(|(_, m)| m).collect();
                v.extend(enumerate_fermat(self.fermat_w_cap)?.into_iter().map(|(_, f)| f));
                v
            }
        };
        pool.sort();
        pool.dedup();
        Ok(pool)
    }

    /// Primes whose powers the b and c searches enumerate.
    pub(crate) fn anchors(&self, pool: &[Natural]) -> Vec<Natural> {
        let mut anchors = pool.to_vec();
        if self.prime_requirement == PrimeRequirement::None {
            anchors.extend((3..=self.free_prime_cap).step_by(2).filter(is_prime).map(Natural::from));
            anchors.sort();
            anchors.dedup();
        }
        anchors
    }

    /// Whether the odd primes of a candidate satisfy the requirement.
    pub(crate) fn admits(&self, pool: &[Natural], p: &Natural, q: Option<&Natural>) -> bool {
        let in_pool = |x: &Natural| pool.binary_search(x).is_ok();
        match (self.prime_requirement, q) {
            (PrimeRequirement::None, _) => true,
            (_, None) => in_pool(p),
            (PrimeRequirement::BothMf, Some(q)) => in_pool(p) && in_pool(q),
            (PrimeRequirement::OneMf, Some(q)) => in_pool(p) || in_pool(q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_pool() {
        let pool = SearchBounds::default().pool().unwrap();
        let small: Vec<String> = pool.iter().take(9).map(|p| p.to_string()).collect();
        assert_eq!(small, ["3", "5", "7", "17", "31", "127", "257", "8191", "65537"]);
        assert_eq!(pool.len(), 13);
        assert_eq!(*pool.last().unwrap(), (BigUint::one() << 61u32) - 1u8);
    }

    #[test]
    fn validation() {
        assert!(SearchBounds::default().validate().is_ok());
        let b = SearchBounds { max_m: 0, ..Default::default() };
        assert!(b.validate().is_err());
        let b = SearchBounds { prime_pool: Some(vec![Natural::from(9u8)]), ..Default::default() };
        assert!(b.validate().is_err());
        let b = SearchBounds { fermat_w_cap: 17, ..Default::default() };
        assert!(b.validate().is_err());
    }

    #[test]
    fn requirement_filter() {
        let b = SearchBounds::default();
        let pool = b.pool().unwrap();
        let n = |v: u64| Natural::from(v);
        assert!(b.admits(&pool, &n(3), Some(&n(19))));
        assert!(!b.admits(&pool, &n(11), Some(&n(19))));
        let both = SearchBounds { prime_requirement: PrimeRequirement::BothMf, ..b.clone() };
        assert!(!both.admits(&pool, &n(3), Some(&n(19))));
        assert!(both.admits(&pool, &n(3), Some(&n(7))));
    }
}
