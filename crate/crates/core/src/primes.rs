//! Primality testing and the Mersenne/Fermat prime machinery.
//!
//! [`is_prime`] is deterministic below 2^64 (Miller–Rabin with the first
//! twelve prime bases, which is exact up to 3.18·10^23). Above that it adds 65
//! pseudo-random bases drawn from a generator seeded by the candidate itself,
//! so verdicts are reproducible and a composite survives with probability
//! below 2^-128.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::{integer_nth_root, SMALL_ODD_PRIMES};
use crate::scalar::UInt;
use crate::Natural;

const FIXED_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const RANDOM_ROUNDS: usize = 65;

pub const MERSENNE_EXPONENT_GUARD: u64 = 10_000;
pub const FERMAT_INDEX_GUARD: u32 = 16;

pub fn is_prime<T: UInt>(n: &T) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for &p in &SMALL_ODD_PRIMES {
        if (n.clone() % T::from_u64(p)).is_zero() {
            return false;
        }
    }
    let n = n.to_natural();
    if !FIXED_BASES.iter().all(|&a| strong_probable_prime(&n, &BigUint::from(a))) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from(&n));
    let lo = BigUint::from(2u8);
    let hi = &n - 1u8;
    (0..RANDOM_ROUNDS).all(|_| strong_probable_prime(&n, &rng.gen_biguint_range(&lo, &hi)))
}

fn seed_from(n: &BigUint) -> u64 {
    // FNV-1a over the little-endian digits
    n.to_bytes_le().iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    for &p in &SMALL_ODD_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 257 * 257 {
        return true;
    }
    FIXED_BASES.iter().all(|a| strong_probable_prime(&n, a))
}

/// One Miller–Rabin round for odd `n > 2`.
fn strong_probable_prime<T: UInt>(n: &T, base: &T) -> bool {
    let one = T::one();
    let n_minus_1 = n.clone() - one.clone();
    let base = base.clone() % n.clone();
    if base.is_zero() || base == one || base == n_minus_1 {
        return true;
    }
    let s = n_minus_1.trailing_zero_bits();
    let d = n_minus_1.shr_bits(s);
    let mut x = base.pow_mod(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.mul_mod(&x, n);
        if x == n_minus_1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Detects `n = q^k` with `q` prime and `k >= 1`.
pub fn prime_power<T: UInt>(n: &T) -> Option<(T, u32)> {
    if *n <= T::one() {
        return None;
    }
    let twos = n.trailing_zero_bits();
    if twos > 0 {
        return n.shr_bits(twos).is_one().then(|| (T::from_u64(2), twos as u32));
    }
    for &p in &SMALL_ODD_PRIMES {
        let pt = T::from_u64(p);
        if (n.clone() % pt.clone()).is_zero() {
            let mut rest = n.clone() / pt.clone();
            let mut k = 1;
            while (rest.clone() % pt.clone()).is_zero() {
                rest = rest / pt.clone();
                k += 1;
            }
            return rest.is_one().then_some((pt, k));
        }
    }
    if is_prime(n) {
        return Some((n.clone(), 1));
    }
    // All prime factors exceed 251.
    let max_k = (n.log2_approx() / 257f64.log2()).floor() as u64;
    for k in crate::numeric::small_primes_up_to(max_k) {
        let (root, exact) = integer_nth_root(n, k as u32);
        if exact {
            return prime_power(&root).map(|(q, e)| (q, e * k as u32));
        }
    }
    None
}

/// Lucas–Lehmer: is `2^p − 1` prime? `p = 2` gives `M = 3`.
pub fn lucas_lehmer(p: u64) -> Result<bool> {
    if !is_prime(&p) {
        return Err(Error::NotPrimeExponent(p));
    }
    if p == 2 {
        return Ok(true);
    }
    let m: BigUint = (BigUint::one() << p) - 1u8;
    let reduce = |mut x: BigUint| {
        while x > m {
            x = (&x & &m) + (&x >> p);
        }
        if x == m {
            BigUint::zero()
        } else {
            x
        }
    };
    let mut s = BigUint::from(4u8);
    for _ in 0..p - 2 {
        s = reduce(&s * &s + &m - 2u8);
    }
    Ok(s.is_zero())
}

/// `F_w = 2^(2^w) + 1`.
pub fn fermat_number(w: u32) -> Natural {
    (BigUint::one() << (1u64 << w)) + 1u8
}

/// Pépin: `F_w` (w >= 1) is prime iff `3^((F_w − 1)/2) ≡ −1 (mod F_w)`.
/// `w = 0` falls back to direct testing of `F_0 = 3`.
pub fn pepin(w: u32) -> bool {
    if w == 0 {
        return is_prime(&3u64);
    }
    let f = fermat_number(w);
    let half = (&f - 1u8) >> 1u8;
    BigUint::from(3u8).modpow(&half, &f) == &f - 1u8
}

/// Prime exponents `e <= max_exponent` with `2^e − 1` prime, ascending.
pub fn enumerate_mersenne(max_exponent: u64) -> Result<Vec<(u64, Natural)>> {
    if max_exponent > MERSENNE_EXPONENT_GUARD {
        return Err(Error::BoundTooLarge {
            what: "Mersenne exponent",
            value: max_exponent,
            limit: MERSENNE_EXPONENT_GUARD,
        });
    }
    let mut out = Vec::new();
    for e in 2..=max_exponent {
        if is_prime(&e) && lucas_lehmer(e)? {
            out.push((e, (BigUint::one() << e) - 1u8));
        }
    }
    Ok(out)
}

/// Indices `w <= max_w` with `F_w` prime, ascending.
pub fn enumerate_fermat(max_w: u32) -> Result<Vec<(u32, Natural)>> {
    if max_w > FERMAT_INDEX_GUARD {
        return Err(Error::BoundTooLarge {
            what: "Fermat index",
            value: u64::from(max_w),
            limit: u64::from(FERMAT_INDEX_GUARD),
        });
    }
    Ok((0..=max_w).filter(|&w| pepin(w)).map(|w| (w, fermat_number(w))).collect())
}

/// Shape of a prime relative to powers of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeClass {
    Two,
    /// `2^exponent − 1`.
    Mersenne {
        exponent: u32,
    },
    /// `2^(2^w) + 1`. Only `3 = F_0 = M_2` has `also_mersenne` set.
    Fermat {
        w: u32,
        also_mersenne: bool,
    },
    OtherOdd,
}

impl PrimeClass {
    pub fn is_mersenne_or_fermat(&self) -> bool {
        matches!(self, PrimeClass::Mersenne { .. } | PrimeClass::Fermat { .. })
    }

    /// The prime this tag pins down; `None` for [`PrimeClass::OtherOdd`].
    pub fn value(&self) -> Option<Natural> {
        match *self {
            PrimeClass::Two => Some(BigUint::from(2u8)),
            PrimeClass::Mersenne { exponent } => Some((BigUint::one() << exponent) - 1u8),
            PrimeClass::Fermat { w, .. } => Some(fermat_number(w)),
            PrimeClass::OtherOdd => None,
        }
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeClass::Two => f.write_str("two"),
            PrimeClass::Mersenne { exponent } => write!(f, "mersenne:{exponent}"),
            PrimeClass::Fermat { w, also_mersenne: false } => write!(f, "fermat:{w}"),
            PrimeClass::Fermat { w, also_mersenne: true } => write!(f, "fermat:{w}|mersenne:2"),
            PrimeClass::OtherOdd => f.write_str("other"),
        }
    }
}

impl FromStr for PrimeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown prime class {s:?}"));
        match s {
            "two" => return Ok(PrimeClass::Two),
            "other" => return Ok(PrimeClass::OtherOdd),
            "fermat:0|mersenne:2" => return Ok(PrimeClass::Fermat { w: 0, also_mersenne: true }),
            _ => {}
        }
        let (tag, num) = s.split_once(':').ok_or_else(bad)?;
        let num: u32 = num.parse().map_err(|_| bad())?;
        match tag {
            "mersenne" => Ok(PrimeClass::Mersenne { exponent: num }),
            "fermat" => Ok(PrimeClass::Fermat { w: num, also_mersenne: false }),
            _ => Err(bad()),
        }
    }
}

pub fn classify<T: UInt>(p: &T) -> Result<PrimeClass> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_natural()));
    }
    let p = p.to_natural();
    if p == BigUint::from(2u8) {
        return Ok(PrimeClass::Two);
    }
    let pow2_exponent = |v: BigUint| {
        let tz = v.trailing_zeros().unwrap_or(0);
        (v >> tz).is_one().then_some(tz)
    };
    let fermat_w = pow2_exponent(&p - 1u8).and_then(|k| {
        let w = k.trailing_zeros();
        (k == 1u64 << w).then_some(w)
    });
    let mersenne_e = pow2_exponent(&p + 1u8);
    Ok(match (fermat_w, mersenne_e) {
        (Some(w), m) => PrimeClass::Fermat { w, also_mersenne: m.is_some() },
        (None, Some(e)) => PrimeClass::Mersenne { exponent: e as u32 },
        (None, None) => PrimeClass::OtherOdd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(&2u64));
        assert!(!is_prime(&561u64));
        assert!(is_prime(&8191u64));
        assert!(!is_prime(&0u64));
        assert!(!is_prime(&1u64));
    }

    #[test]
    fn is_prime_matches_trial_division_below_1e5() {
        for n in 0..100_000u64 {
            assert_eq!(is_prime(&n), trial_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprime to bases 2..=37 except 41: 3825123056546413051
        assert!(!is_prime(&3_825_123_056_546_413_051u64));
        // Arnault-style composite 318665857834031151167461 = 399165290221 · 798330580441
        let n: BigUint = "318665857834031151167461".parse().unwrap();
        assert!(!is_prime(&n));
        // largest prime below 2^64 and 2^127 - 1
        assert!(is_prime(&18_446_744_073_709_551_557u64));
        assert!(is_prime(&((BigUint::one() << 127u32) - 1u8)));
        assert!(is_prime(&((1u128 << 127) - 1)));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power(&9u64), Some((3, 2)));
        assert_eq!(prime_power(&64u64), Some((2, 6)));
        assert_eq!(prime_power(&15u64), None);
        assert_eq!(prime_power(&1u64), None);
        let q = BigUint::from(131_101u32);
        assert!(is_prime(&q));
        assert_eq!(prime_power(&q.clone().pow(7u32)), Some((q.clone(), 7)));
        assert_eq!(prime_power(&(q.clone().pow(2u32) * BigUint::from(131_111u32))), None);
    }

    #[test]
    fn lucas_lehmer_examples() {
        assert_eq!(lucas_lehmer(7), Ok(true));
        assert_eq!(lucas_lehmer(11), Ok(false));
        assert_eq!(lucas_lehmer(2), Ok(true));
        assert_eq!(lucas_lehmer(9), Err(Error::NotPrimeExponent(9)));
    }

    #[test]
    fn lucas_lehmer_agrees_with_is_prime_to_61() {
        for p in (2..=61u64).filter(|p| trial_is_prime(*p)) {
            let m = (BigUint::one() << p) - 1u8;
            assert_eq!(lucas_lehmer(p).unwrap(), is_prime(&m), "p = {p}");
        }
    }

    #[test]
    fn pepin_examples_and_agreement() {
        assert!(pepin(2));
        assert!(pepin(4));
        assert!(!pepin(5));
        for w in 0..=5 {
            assert_eq!(pepin(w), is_prime(&fermat_number(w)), "w = {w}");
        }
    }

    #[test]
    fn mersenne_enumeration() {
        let exps = |m| enumerate_mersenne(m).unwrap().into_iter().map(|(e, _)| e).collect::<Vec<_>>();
        assert_eq!(exps(13), vec![2, 3, 5, 7, 13]);
        assert_eq!(exps(2), vec![2]);
        assert_eq!(exps(11), vec![2, 3, 5, 7]);
        assert_eq!(exps(61), vec![2, 3, 5, 7, 13, 17, 19, 31, 61]);
        assert!(matches!(enumerate_mersenne(10_001), Err(Error::BoundTooLarge { .. })));
    }

    #[test]
    fn fermat_enumeration() {
        let ws = |m| enumerate_fermat(m).unwrap().into_iter().map(|(w, _)| w).collect::<Vec<_>>();
        assert_eq!(ws(4), vec![0, 1, 2, 3, 4]);
        assert_eq!(ws(8), vec![0, 1, 2, 3, 4]);
        assert_eq!(ws(0), vec![0]);
        assert!(enumerate_fermat(17).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&7u64), Ok(PrimeClass::Mersenne { exponent: 3 }));
        assert_eq!(classify(&17u64), Ok(PrimeClass::Fermat { w: 2, also_mersenne: false }));
        assert_eq!(classify(&19u64), Ok(PrimeClass::OtherOdd));
        assert_eq!(classify(&2u64), Ok(PrimeClass::Two));
        assert_eq!(classify(&3u64), Ok(PrimeClass::Fermat { w: 0, also_mersenne: true }));
        assert!(matches!(classify(&9u64), Err(Error::NotPrime(_))));
    }

    #[test]
    fn classify_round_trips_through_value_and_text() {
        for p in (2..5000u64).filter(|p| trial_is_prime(*p)) {
            let class = classify(&p).unwrap();
            if let Some(v) = class.value() {
                assert_eq!(v, BigUint::from(p));
            }
            assert_eq!(class.to_string().parse::<PrimeClass>().unwrap(), class);
        }
        let m61 = (BigUint::one() << 61u32) - 1u8;
        assert_eq!(classify(&m61), Ok(PrimeClass::Mersenne { exponent: 61 }));
    }
}
