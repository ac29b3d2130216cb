//! Exact integer kernels: gcd, roots, perfect powers, modular powers,
//! factorization and the radical.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One};

use crate::error::{Error, Result};
use crate::primes::is_prime;
use crate::scalar::UInt;

/// Odd primes used by the cheap divisibility filters.
pub(crate) const SMALL_ODD_PRIMES: [u64; 53] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
    241, 251,
];

pub fn gcd<T: UInt>(a: &T, b: &T) -> T {
    a.gcd(b)
}

/// `base^exp mod modulus`.
///
/// # Panics
///
/// If `modulus < 2`.
pub fn mod_pow<T: UInt>(base: &T, exp: &T, modulus: &T) -> T {
    assert!(*modulus > T::one(), "modulus must be at least 2");
    base.pow_mod(exp, modulus)
}

/// Returns `(⌊n^(1/k)⌋, exact)` where `exact` means the root is an exact
/// `k`-th root of `n`.
///
/// # Panics
///
/// If `k == 0`.
pub fn integer_nth_root<T: UInt>(n: &T, k: u32) -> (T, bool) {
    assert!(k >= 1, "root degree must be positive");
    if k == 1 || n.is_zero() || n.is_one() {
        return (n.clone(), true);
    }
    let bits = n.bits();
    if u64::from(k) >= bits {
        // 2 <= n < 2^k
        return (T::one(), false);
    }

    let mut x = root_upper_bound(n, k);
    let k_minus_1 = T::from_u64(u64::from(k - 1));
    let k_t = T::from_u64(u64::from(k));
    loop {
        let q = match x.checked_pow(k - 1) {
            Some(p) => n.clone() / p,
            None => T::zero(),
        };
        let y = (x.clone() * k_minus_1.clone() + q) / k_t.clone();
        if y >= x {
            break;
        }
        x = y;
    }
    let exact = x.checked_pow(k).is_some_and(|p| p == *n);
    (x, exact)
}

/// Some `x` with `x >= ⌊n^(1/k)⌋`, close to the root when floats allow it.
fn root_upper_bound<T: UInt>(n: &T, k: u32) -> T {
    let bits = n.bits();
    let fallback = || {
        let e = bits.div_ceil(u64::from(k));
        T::from_natural(&(BigUint::one() << e)).expect("2^ceil(bits/k) fits the source width")
    };
    let est = (n.log2_approx() / f64::from(k)).exp2() * (1.0 + 1e-9) + 2.0;
    if !est.is_finite() {
        return fallback();
    }
    let Some(candidate) = BigUint::from_f64(est.ceil()).and_then(|v| T::from_natural(&v)) else {
        return fallback();
    };
    // Newton from below would stall; keep the float guess only if provably above.
    match candidate.checked_pow(k) {
        Some(p) if p <= *n => fallback(),
        _ => candidate,
    }
}

/// Detects `n = x^y` with `y >= 2`, returning the maximal exponent.
///
/// `1` is reported as `(1, 2)`; `0` yields `None`.
pub fn is_perfect_power<T: UInt>(n: &T) -> Option<(T, u32)> {
    if n.is_zero() {
        return None;
    }
    if n.is_one() {
        return Some((T::one(), 2));
    }

    // Any exponent must divide every prime valuation.
    let mut rest = n.clone();
    let mut valuation_gcd = 0u64;
    let twos = rest.trailing_zero_bits();
    if twos > 0 {
        rest = rest.shr_bits(twos);
        valuation_gcd = twos;
    }
    for &p in &SMALL_ODD_PRIMES {
        if rest.is_one() {
            break;
        }
        let pt = T::from_u64(p);
        let mut v = 0u64;
        while (rest.clone() % pt.clone()).is_zero() {
            rest = rest / pt.clone();
            v += 1;
        }
        if v > 0 {
            valuation_gcd = num_integer::gcd(valuation_gcd, v);
            if valuation_gcd == 1 {
                return None;
            }
        }
    }

    let candidates: Vec<u32> = if valuation_gcd > 0 {
        prime_divisors_u64(valuation_gcd).into_iter().map(|k| k as u32).collect()
    } else {
        // Every prime factor exceeds 251, so n >= 257^k.
        let max_k = (n.log2_approx() / 257f64.log2()).floor() as u64;
        small_primes_up_to(max_k).into_iter().map(|k| k as u32).collect()
    };

    for k in candidates {
        let (root, exact) = integer_nth_root(n, k);
        if exact {
            return Some(match is_perfect_power(&root) {
                Some((base, e)) if !root.is_one() => (base, e * k),
                _ => (root, k),
            });
        }
    }
    None
}

fn prime_divisors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn small_primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// Work limits for [`factorize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division runs over odd candidates up to this bound.
    pub trial_bound: u64,
    /// Total Pollard–Brent iterations allowed per call.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self { trial_bound: 1 << 12, rho_iterations: 1 << 24 }
    }
}

/// `n = Π pᵢ^αᵢ` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization<T> {
    factors: Vec<(T, u32)>,
}

impl<T: UInt> Default for Factorization<T> {
    fn default() -> Self {
        Self { factors: Vec::new() }
    }
}

impl<T: UInt> Factorization<T> {
    pub fn factors(&self) -> &[(T, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &T> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent_of(&self, p: &T) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    /// The product of all prime powers.
    pub fn value(&self) -> T {
        self.factors.iter().fold(T::one(), |acc, (p, e)| {
            acc * p.checked_pow(*e).expect("factors of a representable value are representable")
        })
    }

    pub fn radical(&self) -> T {
        self.factors.iter().fold(T::one(), |acc, (p, _)| acc * p.clone())
    }

    fn from_map(map: BTreeMap<T, u32>) -> Self {
        Self { factors: map.into_iter().collect() }
    }
}

/// Complete factorization of `n >= 1` within `budget`.
///
/// Trial division strips small primes; remaining cofactors are peeled as
/// perfect powers or split with Pollard–Brent until every piece is prime.
pub fn factorize<T: UInt>(n: &T, budget: &FactorBudget) -> Result<Factorization<T>> {
    if n.is_zero() {
        return Err(Error::PreconditionViolated("cannot factorize 0".into()));
    }
    let mut found = BTreeMap::new();
    let mut rest = n.clone();

    let twos = rest.trailing_zero_bits();
    if twos > 0 {
        found.insert(T::from_u64(2), twos as u32);
        rest = rest.shr_bits(twos);
    }

    let mut d = 3u64;
    let mut exhausted = false;
    while d <= budget.trial_bound && !rest.is_one() {
        let dt = T::from_u64(d);
        if dt.clone() * dt.clone() > rest {
            exhausted = true;
            break;
        }
        let mut e = 0;
        while (rest.clone() % dt.clone()).is_zero() {
            rest = rest / dt.clone();
            e += 1;
        }
        if e > 0 {
            found.insert(dt, e);
        }
        d += 2;
    }

    let mut rho_left = budget.rho_iterations;
    if !rest.is_one() {
        if exhausted {
            *found.entry(rest).or_insert(0) += 1;
        } else {
            split_into(rest, 1, &mut rho_left, &mut found)?;
        }
    }
    Ok(Factorization::from_map(found))
}

fn split_into<T: UInt>(n: T, mult: u32, rho_left: &mut u64, found: &mut BTreeMap<T, u32>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        *found.entry(n).or_insert(0) += mult;
        return Ok(());
    }
    if let Some((base, e)) = is_perfect_power(&n) {
        return split_into(base, mult * e, rho_left, found);
    }
    let Some(d) = pollard_brent(&n, rho_left) else {
        return Err(Error::BudgetExceeded { cofactor: n.to_natural() });
    };
    let other = n / d.clone();
    split_into(d, mult, rho_left, found)?;
    split_into(other, mult, rho_left, found)
}

/// Finds a nontrivial divisor of the odd composite `n`, charging iterations
/// against `rho_left`.
fn pollard_brent<T: UInt>(n: &T, rho_left: &mut u64) -> Option<T> {
    const BATCH: u64 = 128;
    let one = T::one();
    let absdiff = |a: &T, b: &T| if a > b { a.clone() - b.clone() } else { b.clone() - a.clone() };

    for c in 1u64.. {
        let c = T::from_u64(c);
        let step = |v: &T| (v.mul_mod(v, n) + c.clone()) % n.clone();
        let mut y = T::from_u64(2) % n.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r = 1u64;

        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = BATCH.min(r - k);
                if *rho_left < batch {
                    return None;
                }
                *rho_left -= batch;
                for _ in 0..batch {
                    y = step(&y);
                    q = q.mul_mod(&absdiff(&x, &y), n);
                }
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }

        if g == *n {
            loop {
                if *rho_left == 0 {
                    return None;
                }
                *rho_left -= 1;
                ys = step(&ys);
                g = absdiff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    unreachable!()
}

/// Product of the distinct primes dividing `n >= 1`.
pub fn radical<T: UInt>(n: &T, budget: &FactorBudget) -> Result<T> {
    Ok(factorize(n, budget)?.radical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Roots;
    use proptest::prelude::*;

    fn nat(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&0u64, &5), 5);
        assert_eq!(gcd(&12u64, &18), 6);
        assert_eq!(gcd(&nat(288), &nat(289)), nat(1));
        assert_eq!(gcd(&0u64, &0), 0);
    }

    #[test]
    fn factorize_examples() {
        let b = FactorBudget::default();
        assert_eq!(factorize(&513u64, &b).unwrap().factors(), &[(3, 3), (19, 1)]);
        assert!(factorize(&1u64, &b).unwrap().is_empty());
        assert_eq!(factorize(&288u64, &b).unwrap().factors(), &[(2, 5), (3, 2)]);
        assert!(factorize(&0u64, &b).is_err());
    }

    #[test]
    fn factorize_needs_rho_beyond_trial_bound() {
        let b = FactorBudget::default();
        // 2^64 + 1 = 274177 · 67280421310721
        let n = (nat(1) << 64u32) + nat(1);
        let f = factorize(&n, &b).unwrap();
        assert_eq!(f.factors(), &[(nat(274_177), 1), (nat(67_280_421_310_721), 1)]);
        // 2^59 - 1 = 179951 · 3203431780337
        let n = (nat(1) << 59u32) - nat(1);
        assert_eq!(factorize(&n, &b).unwrap().distinct_primes(), 2);
    }

    #[test]
    fn factorize_prime_power_cofactor() {
        let b = FactorBudget::default();
        let p = nat(1_000_000_007);
        let n = num_traits::Pow::pow(&p, 3u32) * nat(4);
        assert_eq!(factorize(&n, &b).unwrap().factors(), &[(nat(2), 2), (p, 3)]);
    }

    #[test]
    fn factorize_budget_exhaustion_is_an_error() {
        let tight = FactorBudget { trial_bound: 3, rho_iterations: 4 };
        // 1000003 · 1000033
        let n = 1_000_003u64 * 1_000_033;
        assert!(matches!(factorize(&n, &tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn radical_examples() {
        let b = FactorBudget::default();
        assert_eq!(radical(&1u64, &b).unwrap(), 1);
        assert_eq!(radical(&262_656u64, &b).unwrap(), 114);
        assert_eq!(radical(&8191u64, &b).unwrap(), 8191);
    }

    #[test]
    fn perfect_power_examples() {
        assert_eq!(is_perfect_power(&9u64), Some((3, 2)));
        assert_eq!(is_perfect_power(&8u64), Some((2, 3)));
        assert_eq!(is_perfect_power(&6u64), None);
        assert_eq!(is_perfect_power(&1u64), Some((1, 2)));
        assert_eq!(is_perfect_power(&64u64), Some((2, 6)));
        assert_eq!(is_perfect_power(&(36u64 * 36 * 36)), Some((6, 6)));
        let big = num_traits::Pow::pow(&nat(1_000_003), 5u32);
        assert_eq!(is_perfect_power(&big), Some((nat(1_000_003), 5)));
        assert_eq!(is_perfect_power(&(big + nat(2))), None);
    }

    #[test]
    fn nth_root_examples() {
        assert_eq!(integer_nth_root(&27u64, 3), (3, true));
        assert_eq!(integer_nth_root(&126u64, 2), (11, false));
        assert_eq!(integer_nth_root(&0u64, 5), (0, true));
        assert_eq!(integer_nth_root(&u64::MAX, 64), (1, false));
        assert_eq!(integer_nth_root(&u128::MAX, 2), (u128::from(u64::MAX), false));
        assert_eq!(integer_nth_root(&u64::MAX, 63), (2, false));
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(&2u64, &9, &3), 2);
        assert_eq!(mod_pow(&12345u64, &0, &7), 1);
        assert_eq!(mod_pow(&3u64, &4, &5), 1);
    }

    /// Brute force over all (x, y) with x <= √n and 2 <= y <= log2 n.
    #[test]
    fn perfect_power_matches_enumeration_to_1e5() {
        const LIMIT: u64 = 100_000;
        let mut best: Vec<Option<(u64, u32)>> = vec![None; LIMIT as usize + 1];
        best[1] = Some((1, 2));
        for x in 2..=LIMIT.sqrt() {
            let mut v = x * x;
            let mut y = 2;
            while v <= LIMIT {
                // larger exponents come from smaller bases, which are visited first
                if best[v as usize].is_none() {
                    best[v as usize] = Some((x, y));
                }
                v *= x;
                y += 1;
            }
        }
        for n in 1..=LIMIT {
            assert_eq!(is_perfect_power(&n), best[n as usize], "n = {n}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn factorization_reconstructs(n in 1u64..=1_000_000_000_000) {
            let f = factorize(&n, &FactorBudget::default()).unwrap();
            prop_assert_eq!(f.value(), n);
            for (p, e) in f.factors() {
                prop_assert!(*e >= 1);
                prop_assert!(is_prime(p));
            }
            prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    proptest! {
        #[test]
        fn factorization_agrees_with_trial_division(n in 1u64..=10_000_000) {
            let f = factorize(&n, &FactorBudget::default()).unwrap();
            prop_assert_eq!(f.factors().to_vec(), trial_factor(n));
        }

        #[test]
        fn radical_multiplicative_on_coprimes(a in 1u64..=1_000_000, b in 1u64..=1_000_000) {
            prop_assume!(gcd(&a, &b) == 1);
            let bud = FactorBudget::default();
            prop_assert_eq!(
                radical(&(a * b), &bud).unwrap(),
                radical(&a, &bud).unwrap() * radical(&b, &bud).unwrap()
            );
        }

        #[test]
        fn radical_ignores_exponents(x in 1u64..=1_000_000, y in 1u64..=1_000_000, m in 1u32..=5, n in 1u32..=5) {
            let bud = FactorBudget::default();
            let lhs = num_traits::Pow::pow(&nat(x), m) * num_traits::Pow::pow(&nat(y), n);
            prop_assert_eq!(radical(&lhs, &bud).unwrap(), radical(&(nat(x) * nat(y)), &bud).unwrap());
        }

        #[test]
        fn nth_root_brackets(n in any::<u128>(), k in 1u32..=40) {
            let (r, exact) = integer_nth_root(&n, k);
            prop_assert!(r.checked_pow(k).is_some_and(|p| p <= n));
            prop_assert!((r + 1).checked_pow(k).is_none_or(|p| p > n));
            prop_assert_eq!(exact, r.checked_pow(k) == Some(n));
            prop_assert_eq!(r, n.nth_root(k));
        }

        #[test]
        fn nth_root_bignum_agrees_with_num_integer(bytes in proptest::collection::vec(any::<u8>(), 1..64), k in 1u32..=60) {
            let n = BigUint::from_bytes_le(&bytes);
            let (r, _) = integer_nth_root(&n, k);
            prop_assert_eq!(r, n.nth_root(k));
        }
    }
}
