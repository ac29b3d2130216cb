//! Bounded exhaustive searches over the exponential Diophantine families
//!
//! ```text
//! two-prime  2^m + μ = p^n
//! a          2^m + μ = p^n·q^r
//! b          p^n + μ·q^r = 2^m
//! c          2^m·p^n + μ = q^r
//! chain      (2^y + 1)^2 = 2^(y+1) + (2^(2y) + 1)
//! ```
//!
//! plus the negative Pell and Nagell–Ljunggren side equations. Every search
//! fans its outer loop out over the current rayon pool and returns a
//! canonically sorted, deduplicated list, so output does not depend on the
//! number of workers.

mod bounds;
mod equation;
mod families;
mod side;

pub use bounds::{PrimeRequirement, SearchBounds};
pub use equation::{Family, FamilyEquation, Sign};
pub use families::{
    fermat_chain, search_all, search_family_a, search_family_b, search_family_c, search_two_prime, FERMAT_CHAIN_MAX_Y,
};
pub use side::{nagell_ljunggren_scan, pell_negative, NagellSolution, PellSolution, NAGELL_MAX_N, NAGELL_MAX_X};

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use crate::decimal::Decimal;
use crate::error::Result;
use crate::numeric::FactorBudget;
use crate::primes::{classify, PrimeClass};
use crate::reference;
use crate::triples::{epsilon_from_radical, AbcTriple};
use crate::Natural;

/// Digits used for stored ε₀ values.
pub const EPSILON_DIGITS: u32 = 4;

/// One solved identity with its triple and quality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub equation: FamilyEquation,
    pub triple: AbcTriple,
    pub radical: Natural,
    pub epsilon_o: Decimal,
    pub p_class: PrimeClass,
    pub q_class: Option<PrimeClass>,
    /// Not covered by the reference table.
    pub extra: bool,
    /// Two-prime records only: `2p > √(2^(m+1) + 1)`, compared squared.
    pub two_p_bound: Option<bool>,
}

impl SolutionRecord {
    /// Builds the record for an identity that is already known to hold.
    pub fn from_equation(equation: FamilyEquation) -> Result<Self> {
        let triple = equation.triple()?;
        let two = BigUint::from(2u8);
        let radical = equation.primes().fold(two, |acc, p| acc * p);
        let epsilon_o = epsilon_from_radical(triple.c(), &radical, EPSILON_DIGITS);
        let p_class = classify(&equation.p)?;
        let q_class = equation.q.as_ref().map(classify).transpose()?;
        let extra = equation.family != Family::FermatChain && !reference::is_tabulated(&triple);
        let two_p_bound = (equation.family == Family::TwoPrime).then(|| {
            let four_p2 = &equation.p * &equation.p * 4u8;
            four_p2 > (BigUint::one() << (equation.m + 1)) + 1u8
        });
        Ok(Self { equation, triple, radical, epsilon_o, p_class, q_class, extra, two_p_bound })
    }

    /// Recomputes `rad(abc)` by factorization, independent of the equation.
    pub fn radical_by_factorization(&self, budget: &FactorBudget) -> Result<Natural> {
        self.triple.radical(budget)
    }

    /// Canonical order: family, then `C`, then exponents and signs.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.equation
            .family
            .cmp(&other.equation.family)
            .then_with(|| self.triple.c().cmp(other.triple.c()))
            .then_with(|| self.equation.cmp(&other.equation))
    }
}

pub(crate) fn finish(mut records: Vec<SolutionRecord>) -> Vec<SolutionRecord> {
    records.sort_by(SolutionRecord::canonical_cmp);
    records.dedup_by(|a, b| a.equation == b.equation);
    records
}
