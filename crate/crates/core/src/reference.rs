//! The tabulated solutions with their published ε₀, shipped as an embedded
//! CSV asset.
//!
//! Columns: `row_id, equation_text, family, A, B, C, epsilon_o, page_tag`.
//! The parametric chain row has empty `A, B, C` and `epsilon_o = <0`; its
//! text is evaluated with `y` bound when the row is expanded.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive};

use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::numeric::FactorBudget;
use crate::search::{Family, FamilyEquation};
use crate::triples::AbcTriple;
use crate::Natural;

pub const APPENDIX_CSV: &str = include_str!("../assets/appendix_table.csv");

/// Values of `y` for which the chain row is checked.
pub const CHAIN_YS: [u32; 4] = [1, 2, 4, 8];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub row_id: u32,
    pub equation_text: String,
    pub family: Family,
    /// `None` for the parametric chain row.
    pub triple: Option<AbcTriple>,
    /// `None` for the parametric chain row, whose ε₀ is only known to be negative.
    pub epsilon_expected: Option<Decimal>,
    pub page_tag: String,
}

impl ReferenceRow {
    pub fn is_parametric(&self) -> bool {
        self.triple.is_none()
    }

    /// The family parameters behind a concrete row.
    pub fn equation(&self, budget: &FactorBudget) -> Result<FamilyEquation> {
        let t = self.triple.as_ref().ok_or_else(|| Error::Parse("parametric row".into()))?;
        FamilyEquation::from_triple(self.family, t, budget)
    }

    /// Evaluates the row text at `y` and returns its triple.
    pub fn triple_at(&self, y: Option<u64>) -> Result<AbcTriple> {
        let (lhs, s1, s2) = parse_equation(&self.equation_text, y)?;
        if &s1 + &s2 != lhs {
            return Err(Error::Parse(format!("row {}: {} does not hold", self.row_id, self.equation_text)));
        }
        AbcTriple::new(s1, s2, lhs)
    }
}

pub fn parse_table(csv: &str) -> Result<Vec<ReferenceRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(csv.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let bad = |why: String| Error::Parse(format!("table record {}: {why}", i + 1));
        let record = record.map_err(|e| bad(e.to_string()))?;
        let cols: Vec<&str> = record.iter().collect();
        let [id, text, family, a, b, c, eps, page] = cols[..] else {
            return Err(bad(format!("expected 8 columns, got {}", cols.len())));
        };
        let row_id = id.parse().map_err(|_| bad(format!("bad row id {id:?}")))?;
        let family: Family = family.parse()?;
        let (triple, epsilon_expected) = if family == Family::FermatChain {
            if eps != "<0" {
                return Err(bad("chain row must carry <0".into()));
            }
            (None, None)
        } else {
            let nat = |s: &str| s.parse::<Natural>().map_err(|_| bad(format!("bad integer {s:?}")));
            let triple = AbcTriple::new(nat(a)?, nat(b)?, nat(c)?)?;
            let eps: Decimal = eps.parse()?;
            if eps.scale() != 4 {
                return Err(bad(format!("epsilon {eps} must have 4 decimals")));
            }
            (Some(triple), Some(eps))
        };
        let row = ReferenceRow {
            row_id,
            equation_text: text.to_string(),
            family,
            triple,
            epsilon_expected,
            page_tag: page.to_string(),
        };
        if let Some(t) = &row.triple {
            if row.triple_at(None)? != *t {
                return Err(bad(format!("text {text:?} disagrees with the A, B, C columns")));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The embedded table.
pub fn appendix_rows() -> &'static [ReferenceRow] {
    static ROWS: OnceLock<Vec<ReferenceRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_table(APPENDIX_CSV).expect("embedded table is well formed"))
}

/// Whether a triple is a concrete table row or an instance of the chain row.
pub fn is_tabulated(t: &AbcTriple) -> bool {
    static TRIPLES: OnceLock<HashSet<AbcTriple>> = OnceLock::new();
    let set = TRIPLES.get_or_init(|| appendix_rows().iter().filter_map(|r| r.triple.clone()).collect());
    set.contains(t) || is_chain_triple(t)
}

fn is_chain_triple(t: &AbcTriple) -> bool {
    let tz = t.a().trailing_zeros().unwrap_or(0);
    if tz < 2 || !(t.a() >> tz).is_one() {
        return false;
    }
    let Some(y) = (tz - 1).to_u32() else { return false };
    FamilyEquation::chain(y).triple().is_ok_and(|c| c == *t)
}

/// Parses `lhs = s1 + s2` over integers with `+`, `*`, `^`, parentheses and
/// an optional variable `y`; returns `(lhs, s1, s2)`.
pub fn parse_equation(text: &str, y: Option<u64>) -> Result<(Natural, Natural, Natural)> {
    let (lhs, rhs) = text.split_once('=').ok_or_else(|| Error::Parse(format!("no '=' in {text:?}")))?;
    let lhs = Parser::new(lhs, y).finish_expr()?;
    let mut parser = Parser::new(rhs, y);
    let first = parser.term()?;
    if !parser.eat(b'+') {
        return Err(Error::Parse(format!("right side of {text:?} is not a sum of two terms")));
    }
    let second = parser.term()?;
    if parser.peek().is_some() {
        return Err(Error::Parse(format!("right side of {text:?} has more than two terms")));
    }
    Ok((lhs, first, second))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    y: Option<u64>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, y: Option<u64>) -> Self {
        Self { src: src.as_bytes(), pos: 0, y }
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        let hit = self.peek() == Some(c);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn finish_expr(&mut self) -> Result<Natural> {
        let v = self.expr()?;
        match self.peek() {
            None => Ok(v),
            Some(_) => Err(self.error("trailing input")),
        }
    }

    fn expr(&mut self) -> Result<Natural> {
        let mut v = self.term()?;
        while self.eat(b'+') {
            v += self.term()?;
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<Natural> {
        let mut v = self.power()?;
        while self.eat(b'*') {
            v *= self.power()?;
        }
        Ok(v)
    }

    fn power(&mut self) -> Result<Natural> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.atom()?.to_u32().ok_or_else(|| self.error("exponent too large"))?;
            return Ok(Pow::pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Natural> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(b'y') => {
                self.pos += 1;
                self.y.map(BigUint::from).ok_or_else(|| self.error("unbound variable y"))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                digits.parse().map_err(|_| self.error("bad number"))
            }
            _ => Err(self.error("expected a number, 'y' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn embedded_table_shape() {
        let rows = appendix_rows();
        assert_eq!(rows.len(), 26);
        assert_eq!(rows.iter().filter(|r| !r.is_parametric()).count(), 25);
        let distinct: HashSet<_> = rows.iter().filter_map(|r| r.triple.clone()).collect();
        assert_eq!(distinct.len(), 24);
    }

    #[test]
    fn every_concrete_row_has_family_parameters() {
        let budget = FactorBudget::default();
        for row in appendix_rows().iter().filter(|r| !r.is_parametric()) {
            let eq = row.equation(&budget).unwrap();
            assert!(eq.holds(), "row {}", row.row_id);
            assert_eq!(eq.triple().unwrap(), *row.triple.as_ref().unwrap());
        }
    }

    #[test]
    fn chain_row_expands() {
        let chain = appendix_rows().iter().find(|r| r.is_parametric()).unwrap();
        for y in CHAIN_YS {
            let t = chain.triple_at(Some(u64::from(y))).unwrap();
            assert_eq!(t, FamilyEquation::chain(y).triple().unwrap());
            assert!(is_tabulated(&t));
        }
        assert!(chain.triple_at(None).is_err());
    }

    #[test]
    fn parse_equation_forms() {
        assert_eq!(parse_equation("3^3*19 = 2^9 + 1", None).unwrap(), (n(513), n(512), n(1)));
        assert_eq!(parse_equation("(2^y + 1)^2 = 2^(y+1) + (2^(2*y) + 1)", Some(2)).unwrap(), (n(25), n(8), n(17)));
        assert!(parse_equation("3 = 1 + 1 + 1", None).is_err());
        assert!(parse_equation("3 + 1", None).is_err());
        assert!(parse_equation("3 = 2 + ", None).is_err());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let header = "row_id,equation_text,family,A,B,C,epsilon_o,page_tag\n";
        assert!(parse_table(&format!("{header}1,3 = 2 + 1,b,1,2,3,0.1,x\n")).is_err());
        assert!(parse_table(&format!("{header}1,5 = 2 + 1,b,1,2,3,0.1000,x\n")).is_err());
        assert!(parse_table(&format!("{header}1,3 = 2 + 1,b,1,2\n")).is_err());
        assert!(parse_table(&format!("{header}1,3 = 2 + 1,b,1,2,3,0.1000,x\n")).is_ok());
    }

    #[test]
    fn tabulated_lookup() {
        assert!(is_tabulated(&AbcTriple::new(n(1), n(512), n(513)).unwrap()));
        assert!(!is_tabulated(&AbcTriple::new(n(1), n(128), n(129)).unwrap()));
    }
}
