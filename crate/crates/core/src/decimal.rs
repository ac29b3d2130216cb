//! Fixed-scale decimals and correctly rounded logarithm ratios.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// `units / 10^scale`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decimal {
    units: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn new(units: BigInt, scale: u32) -> Self {
        Self { units, scale }
    }

    pub fn units(&self) -> &BigInt {
        &self.units
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_negative(&self) -> bool {
        self.units.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        self.units.to_f64().unwrap_or(f64::NAN) / 10f64.powi(self.scale as i32)
    }

    fn units_at(&self, scale: u32) -> BigInt {
        debug_assert!(scale >= self.scale);
        &self.units * BigInt::from(10u8).pow(scale - self.scale)
    }

    /// `|self − other|` at the finer of the two scales.
    pub fn abs_diff(&self, other: &Decimal) -> Decimal {
        let scale = self.scale.max(other.scale);
        Decimal::new((self.units_at(scale) - other.units_at(scale)).abs(), scale)
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let scale = self.scale.max(other.scale);
        self.units_at(scale).cmp(&other.units_at(scale))
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.units.magnitude().to_string();
        let sign = if self.units.is_negative() { "-" } else { "" };
        let scale = self.scale as usize;
        if scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{sign}{int}.{frac}")
    }
}

impl FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid decimal {s:?}"));
        let s = s.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let magnitude: BigUint = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Ok(Decimal::new(BigInt::from_biguint(sign, magnitude), frac.len() as u32))
    }
}

/// Fixed-point `ln(n) · 2^bits` as `(approximation, error bound in ulps)`.
fn ln_fixed(n: &BigUint, bits: u64) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "ln(0)");
    let k = n.bits() - 1;
    let pow_k = BigUint::one() << k;
    // n = 2^k · m with m in [1, 2); ln m = 2·atanh((n − 2^k)/(n + 2^k)).
    let (ln_m, err_m) = two_atanh(&(n - &pow_k), &(n + &pow_k), bits);
    let (ln_2, err_2) = two_atanh(&BigUint::one(), &BigUint::from(3u8), bits);
    let k = BigInt::from(k);
    (ln_m + &k * ln_2, err_m + k * err_2)
}

/// `2·atanh(num/den) · 2^bits` for `0 <= num/den <= 1/3`, with its error bound.
fn two_atanh(num: &BigUint, den: &BigUint, bits: u64) -> (BigInt, BigInt) {
    let z = BigInt::from((num << bits) / den);
    let z2 = (&z * &z) >> bits;
    let mut term = z;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 1u64;
    while !term.is_zero() {
        sum += &term / BigInt::from(j);
        term = (&term * &z2) >> bits;
        j += 2;
        terms += 1;
    }
    // Each term carries at most a few ulps of truncation; the tail after the
    // first vanishing term is below one ulp.
    (sum << 1u8, BigInt::from(8 * (terms + 2)))
}

/// `q = floor(num/den)` adjusted by round-half-even; `den > 0`.
fn div_round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let twice = &r << 1u8;
    match twice.cmp(den) {
        Ordering::Greater => q + 1,
        Ordering::Less => q,
        Ordering::Equal if q.is_odd() => q + 1,
        Ordering::Equal => q,
    }
}

/// `ln(numerator)/ln(denominator) − 1` rounded half-even to `digits` decimals.
///
/// Logarithms are evaluated as intervals; precision doubles until both ends
/// of the interval round to the same decimal. `denominator` must be at
/// least 2.
pub fn log_ratio_minus_one(numerator: &BigUint, denominator: &BigUint, digits: u32) -> Decimal {
    assert!(*denominator >= BigUint::from(2u8), "ln of the denominator must be positive");
    let ten_pow = BigInt::from(10u8).pow(digits);
    let mut bits = 64 + 4 * u64::from(digits);
    loop {
        let (lc, ec) = ln_fixed(numerator, bits);
        let (lr, er) = ln_fixed(denominator, bits);
        let lo = div_round_half_even(&((&lc - &ec) * &ten_pow), &(&lr + &er));
        let hi = div_round_half_even(&((&lc + &ec) * &ten_pow), &(&lr - &er));
        if lo == hi || bits >= 1 << 14 {
            return Decimal::new(hi - &ten_pow, digits);
        }
        bits *= 2;
    }
}
