//! The unsigned scalar abstraction shared by every arithmetic kernel.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, One, ToPrimitive, Unsigned, Zero};

/// An unsigned integer type the kernels can run on.
///
/// Implemented for `u64`, `u128` and [`BigUint`]. Fixed-width types report
/// overflow through the `checked_*` methods; `BigUint` never overflows.
pub trait UInt:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Integer
    + Unsigned
    + ToPrimitive
    + CheckedAdd
    + CheckedMul
{
    fn from_u64(v: u64) -> Self;

    /// Number of significant bits; zero has zero bits.
    fn bits(&self) -> u64;

    fn to_natural(&self) -> BigUint;

    /// `None` when the value does not fit.
    fn from_natural(v: &BigUint) -> Option<Self>;

    fn shr_bits(&self, n: u64) -> Self;

    /// Number of trailing zero bits; zero reports 0.
    fn trailing_zero_bits(&self) -> u64;

    /// `self * rhs mod modulus` without intermediate overflow.
    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self;

    fn checked_pow(&self, mut exp: u32) -> Option<Self> {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Some(acc)
    }

    /// Left-to-right square-and-multiply.
    fn pow_mod(&self, exp: &Self, modulus: &Self) -> Self {
        let base = self.mod_floor(modulus);
        let mut acc = Self::one().mod_floor(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if exp.shr_bits(i).is_odd() {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// Approximate base-2 logarithm; `-inf` for zero.
    fn log2_approx(&self) -> f64 {
        let b = self.bits();
        if b <= 64 {
            return self.to_f64().map_or(f64::NEG_INFINITY, f64::log2);
        }
        let shift = b - 64;
        let top = self.shr_bits(shift).to_f64().unwrap_or(f64::NAN);
        top.log2() + shift as f64
    }
}

impl UInt for u64 {
    fn from_u64(v: u64) -> Self {
        v
    }

    fn bits(&self) -> u64 {
        u64::from(64 - self.leading_zeros())
    }

    fn to_natural(&self) -> BigUint {
        BigUint::from(*self)
    }

    fn from_natural(v: &BigUint) -> Option<Self> {
        v.to_u64()
    }

    fn shr_bits(&self, n: u64) -> Self {
        if n >= 64 {
            0
        } else {
            self >> n
        }
    }

    fn trailing_zero_bits(&self) -> u64 {
        if *self == 0 {
            0
        } else {
            u64::from(self.trailing_zeros())
        }
    }

    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
        ((u128::from(*self) * u128::from(*rhs)) % u128::from(*modulus)) as u64
    }
}

impl UInt for u128 {
    fn from_u64(v: u64) -> Self {
        u128::from(v)
    }

    fn bits(&self) -> u64 {
        u64::from(128 - self.leading_zeros())
    }

    fn to_natural(&self) -> BigUint {
        BigUint::from(*self)
    }

    fn from_natural(v: &BigUint) -> Option<Self> {
        v.to_u128()
    }

    fn shr_bits(&self, n: u64) -> Self {
        if n >= 128 {
            0
        } else {
            self >> n
        }
    }

    fn trailing_zero_bits(&self) -> u64 {
        if *self == 0 {
            0
        } else {
            u64::from(self.trailing_zeros())
        }
    }

    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
        let m = *modulus;
        let a = self % m;
        let b = rhs % m;
        if m <= u128::from(u64::MAX) {
            return (a * b) % m;
        }
        // Double-and-add keeps every intermediate below 2m.
        let add = |x: u128, y: u128| {
            let (s, overflow) = x.overflowing_add(y);
            if overflow || s >= m {
                s.wrapping_sub(m)
            } else {
                s
            }
        };
        let mut acc = 0u128;
        for i in (0..128 - b.leading_zeros()).rev() {
            acc = add(acc, acc);
            if (b >> i) & 1 == 1 {
                acc = add(acc, a);
            }
        }
        acc
    }
}

impl UInt for BigUint {
    fn from_u64(v: u64) -> Self {
        BigUint::from(v)
    }

    fn bits(&self) -> u64 {
        BigUint::bits(self)
    }

    fn to_natural(&self) -> BigUint {
        self.clone()
    }

    fn from_natural(v: &BigUint) -> Option<Self> {
        Some(v.clone())
    }

    fn shr_bits(&self, n: u64) -> Self {
        self >> n
    }

    fn trailing_zero_bits(&self) -> u64 {
        self.trailing_zeros().unwrap_or(0)
    }

    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
        (self * rhs) % modulus
    }

    fn checked_pow(&self, exp: u32) -> Option<Self> {
        Some(num_traits::Pow::pow(self, exp))
    }

    fn pow_mod(&self, exp: &Self, modulus: &Self) -> Self {
        if modulus.is_one() {
            return BigUint::zero();
        }
        self.modpow(exp, modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u128_mul_mod_matches_bignum() {
        let m: u128 = (1u128 << 127) - 1;
        let a: u128 = 0xdead_beef_dead_beef_dead_beef_dead_beef;
        let b: u128 = 0x1234_5678_9abc_def0_1234_5678_9abc_def0;
        let expected = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(m);
        assert_eq!(BigUint::from(a.mul_mod(&b, &m)), expected);
    }

    #[test]
    fn checked_pow_reports_overflow() {
        assert_eq!(3u64.checked_pow(40), Some(12_157_665_459_056_928_801));
        assert_eq!(3u64.checked_pow(41), None);
        assert_eq!(2u128.checked_pow(127), Some(1u128 << 127));
    }

    #[test]
    fn pow_mod_agrees_across_widths() {
        let m = 1_000_000_007u64;
        let want = 3u64.pow_mod(&1_000_000u64, &m);
        assert_eq!(u128::from(want), 3u128.pow_mod(&1_000_000u128, &u128::from(m)));
        assert_eq!(BigUint::from(want), BigUint::from(3u8).pow_mod(&BigUint::from(1_000_000u32), &BigUint::from(m)));
    }

    #[test]
    fn log2_of_large_values() {
        let v = BigUint::from(1u8) << 200u32;
        assert!((v.log2_approx() - 200.0).abs() < 1e-9);
        assert_eq!(0u64.log2_approx(), f64::NEG_INFINITY);
    }
}
