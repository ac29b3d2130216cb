use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::numeric::{factorize, FactorBudget};
use crate::primes::prime_power;
use crate::triples::AbcTriple;
use crate::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    TwoPrime,
    A,
    B,
    C,
    FermatChain,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::TwoPrime, Family::A, Family::B, Family::C, Family::FermatChain];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::TwoPrime => "two-prime",
            Family::A => "a",
            Family::B => "b",
            Family::C => "c",
            Family::FermatChain => "chain",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "two-prime" => Family::TwoPrime,
            "a" => Family::A,
            "b" => Family::B,
            "c" => Family::C,
            "chain" => Family::FermatChain,
            _ => return Err(Error::Parse(format!("unknown family {s:?}"))),
        })
    }
}

/// The sign μ = ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be ±1, got {v}"))),
        }
    }

    fn apply(self, lhs: &Natural, rhs: &Natural) -> Option<Natural> {
        match self {
            Sign::Plus => Some(lhs + rhs),
            Sign::Minus => (lhs >= rhs).then(|| lhs - rhs),
        }
    }
}

/// A solved instance of one family.
///
/// Field roles per family: see the module docs. `q`/`r` are absent for the
/// two-prime family; `y` is present only for the chain, whose fields are
/// filled as the family-b instance `p^2 − q = 2^m` with `p = 2^y + 1`,
/// `q = 2^(2y) + 1`, `m = y + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyEquation {
    pub family: Family,
    pub m: u32,
    pub n: u32,
    pub r: Option<u32>,
    pub mu: Sign,
    pub p: Natural,
    pub q: Option<Natural>,
    pub y: Option<u32>,
}

fn two_pow(m: u32) -> Natural {
    BigUint::one() << m
}

impl FamilyEquation {
    pub fn chain(y: u32) -> Self {
        Self {
            family: Family::FermatChain,
            m: y + 1,
            n: 2,
            r: Some(1),
            mu: Sign::Minus,
            p: two_pow(y) + 1u8,
            q: Some(two_pow(2 * y) + 1u8),
            y: Some(y),
        }
    }

    fn p_pow(&self) -> Natural {
        Pow::pow(&self.p, self.n)
    }

    fn q_pow(&self) -> Option<Natural> {
        Some(Pow::pow(self.q.as_ref()?, self.r?))
    }

    /// The odd primes named by the equation.
    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        std::iter::once(&self.p).chain(self.q.as_ref())
    }

    /// `(left, right)` of the identity as evaluated; `None` when a side would
    /// go negative or a required field is absent.
    pub fn sides(&self) -> Option<(Natural, Natural)> {
        let two_m = two_pow(self.m);
        match self.family {
            Family::TwoPrime => Some((self.mu.apply(&two_m, &BigUint::one())?, self.p_pow())),
            Family::A => Some((self.mu.apply(&two_m, &BigUint::one())?, self.p_pow() * self.q_pow()?)),
            Family::B => Some((self.mu.apply(&self.p_pow(), &self.q_pow()?)?, two_m)),
            Family::C => Some((self.mu.apply(&(two_m * self.p_pow()), &BigUint::one())?, self.q_pow()?)),
            Family::FermatChain => {
                let y = self.y?;
                let lhs = Pow::pow(&(two_pow(y) + 1u8), 2u32);
                Some((lhs, two_pow(y + 1) + two_pow(2 * y) + 1u8))
            }
        }
    }

    /// The identity holds exactly.
    pub fn holds(&self) -> bool {
        self.sides().is_some_and(|(l, r)| l == r && !l.is_zero())
    }

    /// The ABC triple carried by the identity.
    pub fn triple(&self) -> Result<AbcTriple> {
        if !self.holds() {
            return Err(Error::PreconditionViolated(format!("identity does not hold: {self}")));
        }
        let one = BigUint::one();
        let two_m = two_pow(self.m);
        let q_pow = || self.q_pow().ok_or_else(|| Error::PreconditionViolated("missing q".into()));
        match self.family {
            Family::TwoPrime => AbcTriple::new(one, two_m, self.p_pow()),
            Family::A => AbcTriple::new(one, two_m, self.p_pow() * q_pow()?),
            Family::B => AbcTriple::new(self.p_pow(), q_pow()?, two_m),
            Family::C => AbcTriple::new(one, two_m * self.p_pow(), q_pow()?),
            Family::FermatChain => {
                let y = self.y.unwrap_or_default();
                AbcTriple::new(two_pow(y + 1), two_pow(2 * y) + 1u8, self.p_pow())
            }
        }
    }

    /// Recovers the family parameters from a triple.
    pub fn from_triple(family: Family, t: &AbcTriple, budget: &FactorBudget) -> Result<Self> {
        let bad = |why: &str| Error::PreconditionViolated(format!("{t} is not a family-{family} triple: {why}"));
        let (a, b, c) = (t.a(), t.b(), t.c());
        let pow2 = |v: &Natural| {
            let tz = v.trailing_zeros().unwrap_or(0);
            (tz > 0 && (v >> tz).is_one()).then_some(tz as u32)
        };
        let odd_prime_power = |v: &Natural| prime_power(v).filter(|(p, _)| p.bit(0));
        // the even member and its 2-adic part
        let even = [a, b, c].into_iter().find(|v| !v.bit(0)).ok_or_else(|| bad("no even member"))?;

        match family {
            Family::TwoPrime | Family::A | Family::C => {
                if !a.is_one() {
                    return Err(bad("smallest member must be 1"));
                }
                let mu = if even == b { Sign::Plus } else { Sign::Minus };
                let odd = if even == b { c } else { b };
                match family {
                    Family::TwoPrime => {
                        let m = pow2(even).ok_or_else(|| bad("even member is not a power of two"))?;
                        let (p, n) = odd_prime_power(odd).ok_or_else(|| bad("odd member is not a prime power"))?;
                        Ok(Self { family, m, n, r: None, mu, p, q: None, y: None })
                    }
                    Family::A => {
                        let m = pow2(even).ok_or_else(|| bad("even member is not a power of two"))?;
                        let f = factorize(odd, budget)?;
                        let [(p, n), (q, r)] = f.factors() else {
                            return Err(bad("odd member is not a product of two prime powers"));
                        };
                        Ok(Self { family, m, n: *n, r: Some(*r), mu, p: p.clone(), q: Some(q.clone()), y: None })
                    }
                    _ => {
                        // 2^m·p^n ± 1 = q^r: the sign is taken relative to 2^m·p^n
                        let mu = if even == b { Sign::Plus } else { Sign::Minus };
                        let m = even.trailing_zeros().unwrap_or(0) as u32;
                        let (p, n) = odd_prime_power(&(even >> m)).ok_or_else(|| bad("even member is not 2^m·p^n"))?;
                        let (q, r) = odd_prime_power(odd).ok_or_else(|| bad("odd member is not a prime power"))?;
                        Ok(Self { family, m, n, r: Some(r), mu, p, q: Some(q), y: None })
                    }
                }
            }
            Family::B => {
                let m = pow2(even).ok_or_else(|| bad("even member is not a power of two"))?;
                let mut odds = [a, b, c].into_iter().filter(|v| *v != even);
                let (x, z) = (odds.next().unwrap(), odds.next().unwrap());
                let (px, nx) = odd_prime_power(x).ok_or_else(|| bad("not a prime power"))?;
                let (pz, nz) = odd_prime_power(z).ok_or_else(|| bad("not a prime power"))?;
                let eq = if even == c {
                    let ((p, n), (q, r)) = if px < pz { ((px, nx), (pz, nz)) } else { ((pz, nz), (px, nx)) };
                    Self { family, m, n, r: Some(r), mu: Sign::Plus, p, q: Some(q), y: None }
                } else {
                    // z is the largest member
                    Self { family, m, n: nz, r: Some(nx), mu: Sign::Minus, p: pz, q: Some(px), y: None }
                };
                Ok(eq)
            }
            Family::FermatChain => {
                let y = pow2(a)
                    .and_then(|e| e.checked_sub(1))
                    .filter(|y| *y >= 1)
                    .ok_or_else(|| bad("A is not 2^(y+1)"))?;
                let eq = Self::chain(y);
                if eq.triple()? != *t {
                    return Err(bad("not of the chain form"));
                }
                Ok(eq)
            }
        }
    }
}

fn power(f: &mut fmt::Formatter<'_>, base: &Natural, e: u32) -> fmt::Result {
    if e == 1 {
        write!(f, "{base}")
    } else {
        write!(f, "{base}^{e}")
    }
}

impl fmt::Display for FamilyEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mu == Sign::Plus { '+' } else { '-' };
        let two = BigUint::from(2u8);
        let q = self.q.clone().unwrap_or_default();
        let r = self.r.unwrap_or(1);
        match self.family {
            Family::TwoPrime => {
                power(f, &two, self.m)?;
                write!(f, " {sign} 1 = ")?;
                power(f, &self.p, self.n)
            }
            Family::A => {
                power(f, &two, self.m)?;
                write!(f, " {sign} 1 = ")?;
                power(f, &self.p, self.n)?;
                f.write_str("·")?;
                power(f, &q, r)
            }
            Family::B => {
                power(f, &self.p, self.n)?;
                write!(f, " {sign} ")?;
                power(f, &q, r)?;
                f.write_str(" = ")?;
                power(f, &two, self.m)
            }
            Family::C => {
                power(f, &two, self.m)?;
                f.write_str("·")?;
                power(f, &self.p, self.n)?;
                write!(f, " {sign} 1 = ")?;
                power(f, &q, r)
            }
            Family::FermatChain => {
                let y = self.y.unwrap_or_default();
                write!(f, "(2^{y} + 1)^2 = 2^{} + (2^{} + 1)", y + 1, 2 * y)
            }
        }
    }
}
