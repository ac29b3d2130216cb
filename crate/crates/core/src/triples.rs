//! ABC triples, their radical and quality.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use crate::decimal::{log_ratio_minus_one, Decimal};
use crate::error::{Error, Result};
use crate::numeric::{gcd, radical, FactorBudget};
use crate::Natural;

/// Coprime `a + b = c` with `b > a >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbcTriple {
    a: Natural,
    b: Natural,
    c: Natural,
}

impl AbcTriple {
    /// Canonicalizes three values where two of them sum to the third.
    pub fn new(x: Natural, y: Natural, z: Natural) -> Result<Self> {
        if x.is_zero() || y.is_zero() || z.is_zero() {
            return Err(Error::NotASum(x, y, z));
        }
        let mut v = [x, y, z];
        v.sort();
        let [a, b, c] = v;
        if &a + &b != c {
            return Err(Error::NotASum(a, b, c));
        }
        if a == b {
            return Err(Error::DegenerateEqualSummands(a));
        }
        if !gcd(&a, &b).is_one() {
            return Err(Error::NotCoprime(a, b));
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> &Natural {
        &self.a
    }

    pub fn b(&self) -> &Natural {
        &self.b
    }

    pub fn c(&self) -> &Natural {
        &self.c
    }

    /// `N = a·b·c`.
    pub fn product(&self) -> Natural {
        &self.a * &self.b * &self.c
    }

    /// `rad(abc)`, computed as `rad(a)·rad(b)·rad(c)` since the three are
    /// pairwise coprime.
    pub fn radical(&self, budget: &FactorBudget) -> Result<Natural> {
        Ok(radical(&self.a, budget)? * radical(&self.b, budget)? * radical(&self.c, budget)?)
    }

    pub fn quality(&self, digits: u32, budget: &FactorBudget) -> Result<QualityReport> {
        let radical = self.radical(budget)?;
        let epsilon_o = epsilon_from_radical(&self.c, &radical, digits);
        Ok(QualityReport { triple: self.clone(), n_value: self.product(), radical, epsilon_o })
    }
}

impl fmt::Display for AbcTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} = {}", self.a, self.b, self.c)
    }
}

pub fn make_triple(x: Natural, y: Natural, z: Natural) -> Result<AbcTriple> {
    AbcTriple::new(x, y, z)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualityReport {
    pub triple: AbcTriple,
    pub n_value: Natural,
    pub radical: Natural,
    pub epsilon_o: Decimal,
}

/// `ε₀ = ln(c)/ln(rad) − 1`, correctly rounded (half-even) to `digits`.
pub fn epsilon_from_radical(c: &Natural, radical: &Natural, digits: u32) -> Decimal {
    log_ratio_minus_one(c, radical, digits)
}

pub fn epsilon_o(t: &AbcTriple, digits: u32, budget: &FactorBudget) -> Result<Decimal> {
    Ok(epsilon_from_radical(t.c(), &t.radical(budget)?, digits))
}

/// `rad(abc)^2 > c`, the ε = 1 form of the conjecture.
pub fn check_eps1(t: &AbcTriple, budget: &FactorBudget) -> Result<bool> {
    let r = t.radical(budget)?;
    Ok(&r * &r > t.c)
}

/// `rad(abc)^6 > 4·abc`.
pub fn check_rad6(t: &AbcTriple, budget: &FactorBudget) -> Result<bool> {
    let r = t.radical(budget)?;
    Ok(Pow::pow(&r, 6u32) > t.product() * BigUint::from(4u8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn t(a: u64, b: u64, c: u64) -> AbcTriple {
        make_triple(n(a), n(b), n(c)).unwrap()
    }

    #[test]
    fn make_triple_examples() {
        let x = make_triple(n(32), n(49), n(81)).unwrap();
        assert_eq!((x.a(), x.b(), x.c()), (&n(32), &n(49), &n(81)));
        let x = make_triple(n(513), n(1), n(512)).unwrap();
        assert_eq!((x.a(), x.b(), x.c()), (&n(1), &n(512), &n(513)));
        assert_eq!(make_triple(n(3), n(3), n(6)), Err(Error::DegenerateEqualSummands(n(3))));
        assert_eq!(make_triple(n(1), n(1), n(2)), Err(Error::DegenerateEqualSummands(n(1))));
        assert!(matches!(make_triple(n(2), n(4), n(6)), Err(Error::NotCoprime(..))));
        assert!(matches!(make_triple(n(2), n(4), n(7)), Err(Error::NotASum(..))));
        assert!(matches!(make_triple(n(0), n(4), n(4)), Err(Error::NotASum(..))));
    }

    #[test]
    fn epsilon_examples() {
        let b = FactorBudget::default();
        assert_eq!(epsilon_o(&t(1, 512, 513), 4, &b).unwrap().to_string(), "0.3176");
        assert_eq!(epsilon_o(&t(3, 5, 8), 4, &b).unwrap().to_string(), "-0.3886");
        assert_eq!(epsilon_o(&t(2, 25, 27), 4, &b).unwrap().to_string(), "-0.0310");
    }

    #[test]
    fn quality_report_fields() {
        let q = t(1, 512, 513).quality(4, &FactorBudget::default()).unwrap();
        assert_eq!(q.n_value, n(262_656));
        assert_eq!(q.radical, n(114));
        assert_eq!(epsilon_from_radical(q.triple.c(), &q.radical, 4), q.epsilon_o);
    }

    #[test]
    fn eps1_examples() {
        let b = FactorBudget::default();
        assert!(check_eps1(&t(1, 512, 513), &b).unwrap());
        assert!(check_eps1(&t(1, 8, 9), &b).unwrap());
        assert!(check_eps1(&t(1, 2, 3), &b).unwrap());
    }

    #[test]
    fn rad6_examples() {
        let b = FactorBudget::default();
        assert!(check_rad6(&t(1, 8, 9), &b).unwrap());
        assert!(check_rad6(&t(3, 125, 128), &b).unwrap());
        assert!(check_rad6(&t(1, 2, 3), &b).unwrap());
    }

    #[test]
    fn fermat_chain_triples_have_negative_quality() {
        let b = FactorBudget::default();
        for y in [1u32, 2, 4, 8] {
            let a = n(1) << (y + 1);
            let bb = (n(1) << (2 * y)) + n(1);
            let c = Pow::pow(&((n(1) << y) + n(1)), 2u32);
            let tr = make_triple(a, bb, c).unwrap();
            assert!(epsilon_o(&tr, 4, &b).unwrap().is_negative(), "y = {y}");
        }
    }

    proptest! {
        #[test]
        fn canonicalization_is_idempotent(a in 1u64..100_000, b in 1u64..100_000, swap in 0usize..6) {
            prop_assume!(a != b && gcd(&a, &b) == 1);
            let mut v = [n(a), n(b), n(a + b)];
            v.rotate_left(swap % 3);
            if swap >= 3 { v.swap(0, 1); }
            let [x, y, z] = v;
            let tr = make_triple(x, y, z).unwrap();
            let again = make_triple(tr.c().clone(), tr.a().clone(), tr.b().clone()).unwrap();
            prop_assert_eq!(&tr, &again);
            prop_assert!(tr.a() < tr.b());
        }

        #[test]
        fn negative_quality_iff_radical_exceeds_c(a in 1u64..50_000, b in 1u64..50_000) {
            prop_assume!(a != b && gcd(&a, &b) == 1);
            let bud = FactorBudget::default();
            let tr = make_triple(n(a), n(b), n(a + b)).unwrap();
            let r = tr.radical(&bud).unwrap();
            let eps = epsilon_o(&tr, 12, &bud).unwrap();
            prop_assert_eq!(eps.is_negative(), r > *tr.c());
        }

        #[test]
        fn quality_decreases_with_radical(c in 2u64..1_000_000, r1 in 2u64..1_000_000, r2 in 2u64..1_000_000) {
            prop_assume!(r1 < r2);
            let e1 = epsilon_from_radical(&n(c), &n(r1), 6);
            let e2 = epsilon_from_radical(&n(c), &n(r2), 6);
            prop_assert!(e1 >= e2);
        }
    }
}
