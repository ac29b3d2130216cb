use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use super::{finish, Family, FamilyEquation, SearchBounds, Sign, SolutionRecord};
use crate::error::{Error, Result};
use crate::numeric::factorize;
use crate::primes::{is_prime, prime_power};
use crate::Natural;

pub const FERMAT_CHAIN_MAX_Y: u32 = 32;

fn two_pow(m: u32) -> Natural {
    BigUint::one() << m
}

fn odd_prime_power(v: &Natural) -> Option<(Natural, u32)> {
    prime_power(v).filter(|(p, _)| p.bit(0))
}

fn records(equations: Vec<FamilyEquation>) -> Result<Vec<SolutionRecord>> {
    let records = equations.into_par_iter().map(SolutionRecord::from_equation).collect::<Result<Vec<_>>>()?;
    Ok(finish(records))
}

/// `(p, n, p^n)` for every anchor prime and exponent with `p^n` below the limit.
fn anchor_powers(anchors: &[Natural], max_exp: u32, limit: &Natural) -> Vec<(Natural, u32, Natural)> {
    let mut out = Vec::new();
    for p in anchors {
        let mut value = p.clone();
        for n in 1..=max_exp {
            if &value >= limit {
                break;
            }
            out.push((p.clone(), n, value.clone()));
            value *= p;
        }
    }
    out
}

/// `2^m + μ = p^n`.
pub fn search_two_prime(bounds: &SearchBounds) -> Result<Vec<SolutionRecord>> {
    bounds.validate()?;
    let pool = bounds.pool()?;
    let limit = bounds.c_limit();
    let equations = (1..=bounds.max_m)
        .into_par_iter()
        .flat_map_iter(|m| [Sign::Plus, Sign::Minus].map(|mu| (m, mu)))
        .filter_map(|(m, mu)| {
            let two_m = two_pow(m);
            let value = match mu {
                Sign::Plus => &two_m + 1u8,
                Sign::Minus => &two_m - 1u8,
            };
            if value >= limit || two_m >= limit {
                return None;
            }
            let (p, n) = odd_prime_power(&value)?;
            (n <= bounds.max_n && bounds.admits(&pool, &p, None)).then_some(FamilyEquation {
                family: Family::TwoPrime,
                m,
                n,
                r: None,
                mu,
                p,
                q: None,
                y: None,
            })
        })
        .collect();
    records(equations)
}

/// `2^m + μ = p^n·q^r`, found by factoring `2^m ± 1`.
pub fn search_family_a(bounds: &SearchBounds) -> Result<Vec<SolutionRecord>> {
    bounds.validate()?;
    let pool = bounds.pool()?;
    let limit = bounds.c_limit();
    let found: Vec<Option<FamilyEquation>> = (1..=bounds.max_m)
        .into_par_iter()
        .flat_map_iter(|m| [Sign::Plus, Sign::Minus].map(|mu| (m, mu)))
        .map(|(m, mu)| {
            let two_m = two_pow(m);
            let value = match mu {
                Sign::Plus => &two_m + 1u8,
                Sign::Minus => &two_m - 1u8,
            };
            if value < BigUint::from(15u8) || value >= limit || two_m >= limit {
                return Ok(None);
            }
            let f = factorize(&value, &bounds.budget)?;
            let [(p, n), (q, r)] = f.factors() else {
                return Ok(None);
            };
            let ok = *n <= bounds.max_n && *r <= bounds.max_r && bounds.admits(&pool, p, Some(q));
            Ok(ok.then(|| FamilyEquation {
                family: Family::A,
                m,
                n: *n,
                r: Some(*r),
                mu,
                p: p.clone(),
                q: Some(q.clone()),
                y: None,
            }))
        })
        .collect::<Result<_>>()?;
    records(found.into_iter().flatten().collect())
}

/// `p^n + μ·q^r = 2^m`.
///
/// Each power `X = p^n` of an anchor prime is paired with every `2^m`; the
/// partner `Y` is whichever of `2^m − X`, `X − 2^m`, `X + 2^m` makes the
/// identity hold and must be an odd prime power. Canonical form: `p < q`
/// when `μ = +1`, and `p^n > q^r` when `μ = −1`.
pub fn search_family_b(bounds: &SearchBounds) -> Result<Vec<SolutionRecord>> {
    bounds.validate()?;
    let pool = bounds.pool()?;
    let anchors = bounds.anchors(&pool);
    let limit = bounds.c_limit();
    let powers = anchor_powers(&anchors, bounds.max_n.max(bounds.max_r), &limit);

    let equations = powers
        .par_iter()
        .flat_map_iter(|(p, n, x)| {
            let mut out = Vec::new();
            for m in 1..=bounds.max_m {
                let two_m = two_pow(m);
                if two_m >= limit {
                    break;
                }
                // (partner, sign, anchor is the larger odd power)
                let mut partners = Vec::with_capacity(3);
                if two_m > *x {
                    partners.push((&two_m - x, Sign::Plus, false));
                }
                if *x > two_m {
                    partners.push((x - &two_m, Sign::Minus, true));
                }
                let sum = x + &two_m;
                if sum < limit {
                    partners.push((sum, Sign::Minus, false));
                }
                for (y, mu, anchor_larger) in partners {
                    let Some((q, r)) = odd_prime_power(&y) else { continue };
                    if q == *p {
                        continue;
                    }
                    let ((p1, n1), (p2, n2)) = match mu {
                        Sign::Plus if *p < q => ((p.clone(), *n), (q, r)),
                        Sign::Plus => ((q, r), (p.clone(), *n)),
                        Sign::Minus if anchor_larger => ((p.clone(), *n), (q, r)),
                        Sign::Minus => ((q, r), (p.clone(), *n)),
                    };
                    if n1 > bounds.max_n || n2 > bounds.max_r || !bounds.admits(&pool, &p1, Some(&p2)) {
                        continue;
                    }
                    out.push(FamilyEquation {
                        family: Family::B,
                        m,
                        n: n1,
                        r: Some(n2),
                        mu,
                        p: p1,
                        q: Some(p2),
                        y: None,
                    });
                }
            }
            out
        })
        .collect();
    records(equations)
}

/// `2^m·p^n + μ = q^r`.
///
/// Two enumerations cover the requirement modes: powers `q^r` of anchor
/// primes with `q^r − μ` tested for the shape `2^m·p^n`, and products
/// `2^m·p^n` over anchor primes with `2^m·p^n + μ` tested for being a prime
/// power.
pub fn search_family_c(bounds: &SearchBounds) -> Result<Vec<SolutionRecord>> {
    bounds.validate()?;
    let pool = bounds.pool()?;
    let anchors = bounds.anchors(&pool);
    let limit = bounds.c_limit();
    let keep = |p: &Natural, n: u32, q: &Natural, r: u32| {
        p != q && n <= bounds.max_n && r <= bounds.max_r && bounds.admits(&pool, p, Some(q))
    };
    let make = |m, n, r, mu, p, q| FamilyEquation { family: Family::C, m, n, r: Some(r), mu, p, q: Some(q), y: None };

    let from_q = anchor_powers(&anchors, bounds.max_r, &limit).into_par_iter().flat_map_iter(|(q, r, qr)| {
        let mut out = Vec::new();
        for mu in [Sign::Plus, Sign::Minus] {
            let x = match mu {
                Sign::Plus => &qr - 1u8,
                Sign::Minus => &qr + 1u8,
            };
            if x >= limit {
                continue;
            }
            let m = x.trailing_zeros().unwrap_or(0) as u32;
            if m == 0 || m > bounds.max_m {
                continue;
            }
            if let Some((p, n)) = odd_prime_power(&(x >> m)) {
                if keep(&p, n, &q, r) {
                    out.push(make(m, n, r, mu, p, q.clone()));
                }
            }
        }
        out
    });

    let from_p = anchor_powers(&anchors, bounds.max_n, &limit).into_par_iter().flat_map_iter(|(p, n, pn)| {
        let mut out = Vec::new();
        for m in 1..=bounds.max_m {
            let x = &pn << m;
            if x >= limit {
                break;
            }
            for mu in [Sign::Plus, Sign::Minus] {
                let y = match mu {
                    Sign::Plus => &x + 1u8,
                    Sign::Minus => &x - 1u8,
                };
                if y >= limit {
                    continue;
                }
                if let Some((q, r)) = odd_prime_power(&y) {
                    if keep(&p, n, &q, r) {
                        out.push(make(m, n, r, mu, p.clone(), q));
                    }
                }
            }
        }
        out
    });

    let mut equations: Vec<FamilyEquation> = from_q.collect();
    equations.extend(from_p.collect::<Vec<_>>());
    equations.sort();
    equations.dedup();
    records(equations)
}

/// Records for `(2^y + 1)^2 = 2^(y+1) + (2^(2y) + 1)` with both odd members
/// prime, `1 <= y <= max_y`.
pub fn fermat_chain(max_y: u32) -> Result<Vec<SolutionRecord>> {
    if max_y > FERMAT_CHAIN_MAX_Y {
        return Err(Error::BoundTooLarge {
            what: "chain index y",
            value: u64::from(max_y),
            limit: u64::from(FERMAT_CHAIN_MAX_Y),
        });
    }
    let mut equations = Vec::new();
    for y in 1..=max_y {
        let eq = FamilyEquation::chain(y);
        if !eq.holds() {
            return Err(Error::PreconditionViolated(format!("chain identity fails at y = {y}")));
        }
        if is_prime(&eq.p) && eq.q.as_ref().is_some_and(is_prime) {
            equations.push(eq);
        }
    }
    records(equations)
}

/// Every family in canonical order.
pub fn search_all(bounds: &SearchBounds, max_y: u32) -> Result<Vec<SolutionRecord>> {
    let mut out = search_two_prime(bounds)?;
    out.extend(search_family_a(bounds)?);
    out.extend(search_family_b(bounds)?);
    out.extend(search_family_c(bounds)?);
    out.extend(fermat_chain(max_y)?);
    Ok(out)
}
