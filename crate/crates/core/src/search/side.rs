use num_bigint::BigUint;
use num_traits::{One, Pow};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::is_perfect_power;
use crate::primes::is_prime;
use crate::Natural;

pub const NAGELL_MAX_X: u64 = 10_000;
pub const NAGELL_MAX_N: u32 = 40;

/// One solution of `y^2 − 2x^2 = −1` at odd index `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub g: u64,
    pub x: Natural,
    pub y: Natural,
    pub x_prime: bool,
    pub y_prime: bool,
}

/// Solutions of `y^2 − 2x^2 = −1` for `g = 1, 3, …, max_g`, generated by
/// `(x, y) → (3x + 2y, 4x + 3y)` from `(1, 1)`.
pub fn pell_negative(max_g: u64) -> Result<Vec<PellSolution>> {
    if max_g == 0 || max_g.is_multiple_of(2) {
        return Err(Error::PreconditionViolated(format!("max_g must be odd and positive, got {max_g}")));
    }
    let mut out = Vec::new();
    let (mut x, mut y) = (BigUint::one(), BigUint::one());
    for g in (1..=max_g).step_by(2) {
        if &y * &y + 1u8 != &x * &x * 2u8 {
            return Err(Error::PreconditionViolated(format!("recurrence left the Pell curve at g = {g}")));
        }
        out.push(PellSolution { g, x_prime: is_prime(&x), y_prime: is_prime(&y), x: x.clone(), y: y.clone() });
        let next_x = &x * 3u8 + &y * 2u8;
        let next_y = &x * 4u8 + &y * 3u8;
        x = next_x;
        y = next_y;
    }
    Ok(out)
}

/// `y^z = (x^n − 1)/(x − 1)` with `y > 1`, `z >= 2`; `z` is maximal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NagellSolution {
    pub x: u64,
    pub n: u32,
    pub y: Natural,
    pub z: u32,
}

/// Scans `2 <= x <= max_x`, `3 <= n <= max_n` for repunits that are perfect
/// powers. Positive `x` only.
pub fn nagell_ljunggren_scan(max_x: u64, max_n: u32) -> Result<Vec<NagellSolution>> {
    if max_x > NAGELL_MAX_X {
        return Err(Error::BoundTooLarge { what: "Nagell–Ljunggren x", value: max_x, limit: NAGELL_MAX_X });
    }
    if max_n > NAGELL_MAX_N {
        return Err(Error::BoundTooLarge {
            what: "Nagell–Ljunggren n",
            value: u64::from(max_n),
            limit: u64::from(NAGELL_MAX_N),
        });
    }
    let mut found: Vec<NagellSolution> = (2..=max_x)
        .into_par_iter()
        .flat_map_iter(|x| {
            let base = Natural::from(x);
            let mut out = Vec::new();
            // 1 + x + x^2
            let mut repunit = &base * &base + &base + 1u8;
            for n in 3..=max_n {
                if let Some((y, z)) = is_perfect_power(&repunit) {
                    debug_assert_eq!((Pow::pow(&base, n) - 1u8) / (&base - 1u8), repunit);
                    out.push(NagellSolution { x, n, y, z });
                }
                repunit = repunit * &base + 1u8;
            }
            out
        })
        .collect();
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn pell_examples() {
        let sols = pell_negative(7).unwrap();
        let pairs: Vec<(Natural, Natural)> = sols.iter().map(|s| (s.x.clone(), s.y.clone())).collect();
        assert_eq!(pairs, vec![(n(1), n(1)), (n(5), n(7)), (n(29), n(41)), (n(169), n(239))]);
        assert!(sols[1].x_prime && sols[1].y_prime);
        assert!(sols[2].x_prime && sols[2].y_prime);
        assert!(!sols[3].x_prime && sols[3].y_prime);
        assert!(pell_negative(4).is_err());
        assert!(pell_negative(0).is_err());
    }

    #[test]
    fn nagell_small_window() {
        let found = nagell_ljunggren_scan(20, 6).unwrap();
        let want = [
            NagellSolution { x: 3, n: 5, y: n(11), z: 2 },
            NagellSolution { x: 7, n: 4, y: n(20), z: 2 },
            NagellSolution { x: 18, n: 3, y: n(7), z: 3 },
        ];
        assert_eq!(found, want);
    }

    #[test]
    fn nagell_guards() {
        assert!(nagell_ljunggren_scan(10_001, 5).is_err());
        assert!(nagell_ljunggren_scan(10, 41).is_err());
    }
}
