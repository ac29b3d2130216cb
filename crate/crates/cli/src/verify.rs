//! Recomputes the reference table and checks it against the searches.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use abcrad::reference::{appendix_rows, CHAIN_YS};
use abcrad::search::{
    fermat_chain, search_family_a, search_family_b, search_family_c, search_two_prime, SearchBounds, SolutionRecord,
    EPSILON_DIGITS,
};
use abcrad::triples::epsilon_o;
use abcrad::{AbcTriple, Decimal, Family, FamilyEquation};
use num_bigint::BigInt;

use crate::CliError;

pub const REPORT_HEADER: [&str; 8] =
    ["row_id", "equation_text", "expected", "computed", "abs_diff", "found_by_search", "status", "note"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCheck {
    pub row_id: String,
    pub equation_text: String,
    /// `<0` for chain rows.
    pub expected: String,
    pub computed: Decimal,
    pub abs_diff: Option<Decimal>,
    pub found_by_search: bool,
    pub passed: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(REPORT_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.row_id.clone(),
                r.equation_text.clone(),
                r.expected.clone(),
                r.computed.to_string(),
                r.abs_diff.as_ref().map(Decimal::to_string).unwrap_or_default(),
                r.found_by_search.to_string(),
                if r.passed { "PASS" } else { "FAIL" }.to_string(),
                r.note.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Largest accepted `|computed − expected|`.
pub fn tolerance() -> Decimal {
    Decimal::new(BigInt::from(1), EPSILON_DIGITS)
}

fn found(records: &[SolutionRecord]) -> HashSet<AbcTriple> {
    records.iter().map(|r| r.triple.clone()).collect()
}

/// Checks every concrete row and the chain row at each `y` in [`CHAIN_YS`].
///
/// Rows are looked up in the search of their own family run at `bounds`.
pub fn verify_table(bounds: &SearchBounds) -> Result<TableReport, CliError> {
    let budget = &bounds.budget;
    let max_y = CHAIN_YS.iter().copied().max().unwrap_or(0);
    let ((two, a), (b, (c, chain))) = rayon::join(
        || (search_two_prime(bounds), search_family_a(bounds)),
        || (search_family_b(bounds), rayon::join(|| search_family_c(bounds), || fermat_chain(max_y))),
    );
    let by_family: BTreeMap<Family, HashSet<AbcTriple>> = [
        (Family::TwoPrime, found(&two?)),
        (Family::A, found(&a?)),
        (Family::B, found(&b?)),
        (Family::C, found(&c?)),
        (Family::FermatChain, found(&chain?)),
    ]
    .into_iter()
    .collect();

    let rows = appendix_rows();
    let mut shared: BTreeMap<&AbcTriple, Vec<u32>> = BTreeMap::new();
    for row in rows {
        if let Some(t) = &row.triple {
            shared.entry(t).or_default().push(row.row_id);
        }
    }

    let mut out = Vec::new();
    for row in rows {
        if let (Some(t), Some(expected)) = (&row.triple, &row.epsilon_expected) {
            let computed = epsilon_o(t, EPSILON_DIGITS, budget)?;
            let diff = computed.abs_diff(expected);
            let found_by_search = by_family[&row.family].contains(t);
            let others: Vec<String> = shared[t].iter().filter(|id| **id != row.row_id).map(u32::to_string).collect();
            let note =
                if others.is_empty() { String::new() } else { format!("same triple {t} as row {}", others.join(", ")) };
            out.push(RowCheck {
                row_id: row.row_id.to_string(),
                equation_text: row.equation_text.clone(),
                expected: expected.to_string(),
                computed,
                passed: diff <= tolerance() && found_by_search,
                abs_diff: Some(diff),
                found_by_search,
                note,
            });
        } else {
            for y in CHAIN_YS {
                let t = row.triple_at(Some(u64::from(y)))?;
                let computed = epsilon_o(&t, EPSILON_DIGITS, budget)?;
                let eq = FamilyEquation::chain(y);
                let found_by_search = by_family[&Family::FermatChain].contains(&t);
                out.push(RowCheck {
                    row_id: format!("{}:y={y}", row.row_id),
                    equation_text: eq.to_string(),
                    expected: "<0".into(),
                    passed: eq.holds() && computed.is_negative() && found_by_search,
                    computed,
                    abs_diff: None,
                    found_by_search,
                    note: String::new(),
                });
            }
        }
    }
    Ok(TableReport { rows: out })
}
