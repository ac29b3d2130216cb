//! Executable oracles for the supporting lemmas and the inequality scans.
//!
//! Proven statements are asserted by their callers; the ε = 1 inequality on
//! preamble instances is the conjecture itself and is only ever scanned.

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{factorize, gcd, is_perfect_power, radical, FactorBudget};
use crate::primes::is_prime;
use crate::scalar::UInt;
use crate::search::Sign;
use crate::Natural;

pub const POWER_SCAN_MAX_M: u32 = 10_000;

fn overflow() -> Error {
    Error::PreconditionViolated("arithmetic overflow in the chosen scalar width".into())
}

fn mul<T: UInt>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or_else(overflow)
}

/// `rad(PG²) > √(2PG²)` and `rad(2PG²) > √(2PG²)`, compared squared.
///
/// Requires `P` an odd prime and `1 <= G² < P`.
pub fn preamble_radical_check<T: UInt>(p: &T, g: &T, budget: &FactorBudget) -> Result<bool> {
    check_p_g(p, g)?;
    let pg2 = mul(p, &mul(g, g)?)?;
    let two_pg2 = mul(&pg2, &T::from_u64(2))?;
    let rad_pg2 = radical(&pg2, budget)?;
    let rad_2pg2 = radical(&two_pg2, budget)?;
    Ok(mul(&rad_pg2, &rad_pg2)? > two_pg2 && mul(&rad_2pg2, &rad_2pg2)? > two_pg2)
}

fn check_p_g<T: UInt>(p: &T, g: &T) -> Result<()> {
    if !p.is_odd() || !is_prime(p) {
        return Err(Error::PreconditionViolated(format!("P = {p} is not an odd prime")));
    }
    if g.is_zero() || mul(g, g)? >= *p {
        return Err(Error::PreconditionViolated(format!("need 1 <= G^2 < P, got G = {g}, P = {p}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreambleSweep {
    pub checked: u64,
    pub failures: Vec<(u64, u64)>,
}

/// [`preamble_radical_check`] over every odd prime `P < p_max` and every
/// admissible `G`.
pub fn preamble_sweep(p_max: u64, budget: &FactorBudget) -> Result<PreambleSweep> {
    let per_p: Vec<PreambleSweep> = (1..p_max / 2)
        .into_par_iter()
        .map(|k| 2 * k + 1)
        .filter(is_prime)
        .map(|p| {
            let mut sweep = PreambleSweep::default();
            let mut g = 1u64;
            while g * g < p {
                sweep.checked += 1;
                if !preamble_radical_check(&p, &g, budget)? {
                    sweep.failures.push((p, g));
                }
                g += 1;
            }
            Ok(sweep)
        })
        .collect::<Result<_>>()?;
    Ok(per_p.into_iter().fold(PreambleSweep::default(), |mut acc, s| {
        acc.checked += s.checked;
        acc.failures.extend(s.failures);
        acc
    }))
}

/// `(P, G, s, t)` with `C = PG² + s`, `A = C − t`, `B = t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreambleInstance<T> {
    pub p: T,
    pub g: T,
    pub s: T,
    pub t: T,
}

impl<T: UInt> PreambleInstance<T> {
    pub fn new(p: T, g: T, s: T, t: T) -> Result<Self> {
        check_p_g(&p, &g)?;
        let pg2 = mul(&p, &mul(&g, &g)?)?;
        if s.is_zero() || s >= pg2 {
            return Err(Error::PreconditionViolated(format!("s = {s} outside [1, PG^2 - 1]")));
        }
        let c = pg2.checked_add(&s).ok_or_else(overflow)?;
        if t.is_zero() || mul(&t, &T::from_u64(2))? >= c {
            return Err(Error::PreconditionViolated(format!("t = {t} outside [1, C/2)")));
        }
        if !gcd(&t, &c).is_one() {
            return Err(Error::PreconditionViolated(format!("gcd(t, C) != 1 for t = {t}, C = {c}")));
        }
        Ok(Self { p, g, s, t })
    }

    pub fn pg2(&self) -> T {
        self.p.clone() * self.g.clone() * self.g.clone()
    }

    pub fn c(&self) -> T {
        self.pg2() + self.s.clone()
    }

    pub fn a(&self) -> T {
        self.c() - self.t.clone()
    }

    pub fn b(&self) -> T {
        self.t.clone()
    }

    /// `N = ABC` in arbitrary precision.
    pub fn n_value(&self) -> Natural {
        self.a().to_natural() * self.b().to_natural() * self.c().to_natural()
    }

    /// `rad(N) > √(2PG²) > √(PG² + s)`, compared squared.
    pub fn eq1_holds(&self, budget: &FactorBudget) -> Result<bool> {
        let rad = radical(&self.a(), budget)?.to_natural()
            * radical(&self.b(), budget)?.to_natural()
            * radical(&self.c(), budget)?.to_natural();
        let two_pg2 = self.pg2().to_natural() * 2u8;
        Ok(&rad * &rad > two_pg2 && two_pg2 > self.c().to_natural())
    }
}

/// Seeded source of valid preamble instances with `P < p_max`.
///
/// Draws that violate `gcd(t, C) = 1` are discarded and counted.
pub struct RandomInstances {
    rng: ChaCha8Rng,
    p_max: u64,
    pub skipped: u64,
}

impl RandomInstances {
    pub fn new(seed: u64, p_max: u64) -> Result<Self> {
        if p_max <= 3 {
            return Err(Error::PreconditionViolated("p_max must exceed 3".into()));
        }
        Ok(Self { rng: ChaCha8Rng::seed_from_u64(seed), p_max, skipped: 0 })
    }
}

impl Iterator for RandomInstances {
    type Item = PreambleInstance<u64>;

    fn next(&mut self) -> Option<Self::Item> {
        let p = loop {
            let p = self.rng.gen_range(3..self.p_max) | 1;
            if p < self.p_max && is_prime(&p) {
                break p;
            }
        };
        loop {
            let g_max = (1..).take_while(|g: &u64| g * g < p).last().unwrap_or(1);
            let g = self.rng.gen_range(1..=g_max);
            let pg2 = p * g * g;
            let s = self.rng.gen_range(1..pg2);
            let c = pg2 + s;
            let t = self.rng.gen_range(1..=(c - 1) / 2);
            match PreambleInstance::new(p, g, s, t) {
                Ok(inst) => return Some(inst),
                Err(_) => self.skipped += 1,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq1Report<T> {
    pub checked: u64,
    pub violations: Vec<PreambleInstance<T>>,
}

/// Evaluates the ε = 1 inequality on `count` instances and collects the
/// violations without judging them.
pub fn eq1_scan<T, I>(instances: I, count: usize, budget: &FactorBudget) -> Result<Eq1Report<T>>
where
    T: UInt,
    I: IntoIterator<Item = PreambleInstance<T>>,
{
    let batch: Vec<_> = instances.into_iter().take(count).collect();
    let verdicts = batch.par_iter().map(|inst| inst.eq1_holds(budget)).collect::<Result<Vec<bool>>>()?;
    let violations = batch.iter().zip(&verdicts).filter(|(_, ok)| !**ok).map(|(i, _)| i.clone()).collect();
    Ok(Eq1Report { checked: batch.len() as u64, violations })
}

/// Outcome of the gcd lemma on one instance:
/// `gcd(S, R) = gcd(S, a)` with `S = g^u + μh^v` and `R = (g^(au) + μh^(av)) / S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdLemmaReport {
    pub s: Natural,
    pub quotient: Natural,
    pub gcd_left: Natural,
    pub gcd_right: Natural,
    pub equal: bool,
    /// `R > a`; only defined when `g, h >= 2`.
    pub quotient_gt_a: Option<bool>,
}

pub fn gcd_factor_lemma(g: &Natural, h: &Natural, u: u32, v: u32, a: u32, mu: Sign) -> Result<GcdLemmaReport> {
    if g.is_zero() || h.is_zero() || u == 0 || v == 0 {
        return Err(Error::PreconditionViolated("g, h, u, v must be positive".into()));
    }
    if a < 3 || !is_prime(&u64::from(a)) {
        return Err(Error::PreconditionViolated(format!("a = {a} is not an odd prime")));
    }
    if !gcd(g, h).is_one() {
        return Err(Error::NotCoprime(g.clone(), h.clone()));
    }
    let gu = Pow::pow(g, u);
    let hv = Pow::pow(h, v);
    let gau = Pow::pow(&gu, a);
    let hav = Pow::pow(&hv, a);
    let (s, t) = match mu {
        Sign::Plus => (&gu + &hv, gau + hav),
        Sign::Minus if gu > hv => (&gu - &hv, gau - hav),
        Sign::Minus => return Err(Error::NonPositiveS),
    };
    if !(&t % &s).is_zero() {
        return Err(Error::PreconditionViolated(format!("{s} does not divide {t}")));
    }
    let quotient = t / &s;
    let a_nat = BigUint::from(a);
    let gcd_left = gcd(&s, &quotient);
    let gcd_right = gcd(&s, &a_nat);
    let two = BigUint::from(2u8);
    let quotient_gt_a = (*g >= two && *h >= two).then(|| quotient > a_nat);
    Ok(GcdLemmaReport { equal: gcd_left == gcd_right, s, quotient, gcd_left, gcd_right, quotient_gt_a })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GcdLemmaFuzz {
    pub checked: u64,
    /// `(g, h, u, v, a, μ)` where the gcd identity failed.
    pub equality_failures: Vec<(u64, u64, u32, u32, u32, Sign)>,
    /// Instances with `g, h >= 2` where `R <= a`.
    pub quotient_failures: u64,
    /// Instances where `gcd(S, a)` was neither 1 nor `a`.
    pub gcd_right_outside: u64,
}

impl GcdLemmaFuzz {
    pub fn passed(&self) -> bool {
        self.equality_failures.is_empty() && self.quotient_failures == 0 && self.gcd_right_outside == 0
    }
}

/// Runs the gcd lemma on `iters` seeded valid instances with
/// `g, h <= 50`, `u, v <= 4`, `a ∈ {3, 5, 7, 11}`.
pub fn gcd_lemma_fuzz(iters: u64, seed: u64) -> Result<GcdLemmaFuzz> {
    const PRIMES: [u32; 4] = [3, 5, 7, 11];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = GcdLemmaFuzz::default();
    while out.checked < iters {
        let g = rng.gen_range(1..=50u64);
        let h = rng.gen_range(1..=50u64);
        let u = rng.gen_range(1..=4u32);
        let v = rng.gen_range(1..=4u32);
        let a = PRIMES[rng.gen_range(0..PRIMES.len())];
        let mu = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let report = match gcd_factor_lemma(&g.into(), &h.into(), u, v, a, mu) {
            Ok(r) => r,
            Err(Error::NotCoprime(..) | Error::NonPositiveS) => continue,
            Err(e) => return Err(e),
        };
        out.checked += 1;
        if !report.equal {
            out.equality_failures.push((g, h, u, v, a, mu));
        }
        if report.quotient_gt_a == Some(false) {
            out.quotient_failures += 1;
        }
        if !report.gcd_right.is_one() && report.gcd_right != BigUint::from(a) {
            out.gcd_right_outside += 1;
        }
    }
    Ok(out)
}

/// Smallest prime dividing `base^n − 1` but no `base^k − 1` for `1 <= k < n`.
pub fn zsigmondy_witness(base: &Natural, n: u32, budget: &FactorBudget) -> Result<Option<Natural>> {
    if *base < BigUint::from(2u8) || n < 2 {
        return Err(Error::PreconditionViolated("need base >= 2 and n >= 2".into()));
    }
    let value = Pow::pow(base, n) - 1u8;
    let f = factorize(&value, budget)?;
    let witness = f.primes().find(|l| (1..n).all(|k| !base.modpow(&BigUint::from(k), l).is_one())).cloned();
    Ok(witness)
}

/// A perfect power of the form `2^m + μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerException {
    pub m: u32,
    pub mu: Sign,
    pub base: Natural,
    pub exp: u32,
}

/// Every perfect power among `2^m ± 1`, `1 <= m <= max_m`, ignoring values
/// below 4.
pub fn perfect_power_exception_scan(max_m: u32) -> Result<Vec<PowerException>> {
    if max_m > POWER_SCAN_MAX_M {
        return Err(Error::BoundTooLarge {
            what: "perfect-power scan m",
            value: u64::from(max_m),
            limit: u64::from(POWER_SCAN_MAX_M),
        });
    }
    let mut hits: Vec<PowerException> = (1..=max_m)
        .into_par_iter()
        .flat_map_iter(|m| [Sign::Minus, Sign::Plus].map(|mu| (m, mu)))
        .filter_map(|(m, mu)| {
            let two_m = BigUint::one() << m;
            let v = match mu {
                Sign::Plus => two_m + 1u8,
                Sign::Minus => two_m - 1u8,
            };
            if v < BigUint::from(4u8) {
                return None;
            }
            is_perfect_power(&v).map(|(base, exp)| PowerException { m, mu, base, exp })
        })
        .collect();
    hits.sort_by_key(|h| (h.m, h.mu));
    Ok(hits)
}
