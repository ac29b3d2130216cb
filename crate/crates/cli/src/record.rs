//! Line-oriented serialization of [`SolutionRecord`].
//!
//! Every integer is written as a decimal string; absent fields are omitted
//! from JSON and left empty in CSV.

use std::io::Write;

use abcrad::search::{Family, FamilyEquation, SolutionRecord};
use abcrad::{AbcTriple, Decimal, Natural, PrimeClass, Sign};
use serde::{Deserialize, Serialize};

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonRecord {
    pub family: String,
    pub m: String,
    pub n: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    pub mu: String,
    pub p: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    pub radical: String,
    pub epsilon_o: String,
    pub p_class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_class: Option<String>,
    pub extra: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_p_bound: Option<bool>,
}

pub const CSV_HEADER: [&str; 17] = [
    "family",
    "m",
    "n",
    "r",
    "mu",
    "p",
    "q",
    "y",
    "A",
    "B",
    "C",
    "radical",
    "epsilon_o",
    "p_class",
    "q_class",
    "extra",
    "two_p_bound",
];

impl From<&SolutionRecord> for JsonRecord {
    fn from(rec: &SolutionRecord) -> Self {
        let eq = &rec.equation;
        JsonRecord {
            family: eq.family.to_string(),
            m: eq.m.to_string(),
            n: eq.n.to_string(),
            r: eq.r.map(|r| r.to_string()),
            mu: eq.mu.value().to_string(),
            p: eq.p.to_string(),
            q: eq.q.as_ref().map(Natural::to_string),
            y: eq.y.map(|y| y.to_string()),
            a: rec.triple.a().to_string(),
            b: rec.triple.b().to_string(),
            c: rec.triple.c().to_string(),
            radical: rec.radical.to_string(),
            epsilon_o: rec.epsilon_o.to_string(),
            p_class: rec.p_class.to_string(),
            q_class: rec.q_class.as_ref().map(PrimeClass::to_string),
            extra: rec.extra,
            two_p_bound: rec.two_p_bound,
        }
    }
}

fn field<T: std::str::FromStr>(name: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Core(abcrad::Error::Parse(format!("bad {name}: {value:?}"))))
}

fn opt_field<T: std::str::FromStr>(name: &str, value: &Option<String>) -> Result<Option<T>, CliError> {
    value.as_deref().map(|v| field(name, v)).transpose()
}

impl TryFrom<&JsonRecord> for SolutionRecord {
    type Error = CliError;

    fn try_from(j: &JsonRecord) -> Result<Self, CliError> {
        let family: Family = field("family", &j.family)?;
        let mu = Sign::from_value(field("mu", &j.mu)?)?;
        let equation = FamilyEquation {
            family,
            m: field("m", &j.m)?,
            n: field("n", &j.n)?,
            r: opt_field("r", &j.r)?,
            mu,
            p: field("p", &j.p)?,
            q: opt_field("q", &j.q)?,
            y: opt_field("y", &j.y)?,
        };
        if !equation.holds() {
            return Err(abcrad::Error::Parse(format!("identity {equation} does not hold")).into());
        }
        let triple = AbcTriple::new(field("A", &j.a)?, field("B", &j.b)?, field("C", &j.c)?)?;
        if equation.triple()? != triple {
            return Err(abcrad::Error::Parse(format!("A, B, C do not match {equation}")).into());
        }
        Ok(SolutionRecord {
            equation,
            triple,
            radical: field("radical", &j.radical)?,
            epsilon_o: field::<Decimal>("epsilon_o", &j.epsilon_o)?,
            p_class: field("p_class", &j.p_class)?,
            q_class: opt_field("q_class", &j.q_class)?,
            extra: j.extra,
            two_p_bound: j.two_p_bound,
        })
    }
}

pub fn to_jsonl(rec: &SolutionRecord) -> String {
    serde_json::to_string(&JsonRecord::from(rec)).expect("record serializes")
}

pub fn from_jsonl(line: &str) -> Result<SolutionRecord, CliError> {
    let j: JsonRecord = serde_json::from_str(line)?;
    SolutionRecord::try_from(&j)
}

fn csv_row(j: &JsonRecord) -> [String; 17] {
    let opt = |v: &Option<String>| v.clone().unwrap_or_default();
    [
        j.family.clone(),
        j.m.clone(),
        j.n.clone(),
        opt(&j.r),
        j.mu.clone(),
        j.p.clone(),
        opt(&j.q),
        opt(&j.y),
        j.a.clone(),
        j.b.clone(),
        j.c.clone(),
        j.radical.clone(),
        j.epsilon_o.clone(),
        j.p_class.clone(),
        opt(&j.q_class),
        j.extra.to_string(),
        j.two_p_bound.map(|b| b.to_string()).unwrap_or_default(),
    ]
}

/// Writes `records` in the chosen format.
pub fn write_records<W: Write>(out: W, records: &[SolutionRecord], format: Format) -> Result<(), CliError> {
    match format {
        Format::Jsonl => {
            let mut out = out;
            for rec in records {
                writeln!(out, "{}", to_jsonl(rec))?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for rec in records {
                w.write_record(csv_row(&JsonRecord::from(rec)))?;
            }
            w.flush()?;
        }
        Format::Pretty => {
            let mut out = out;
            let width = records.iter().map(|r| r.equation.to_string().chars().count()).max().unwrap_or(0);
            for rec in records {
                let eq = rec.equation.to_string();
                let pad = width - eq.chars().count();
                writeln!(
                    out,
                    "{:<9} {eq}{:pad$}  eps0 = {:>7}  rad = {}{}",
                    rec.equation.family.to_string(),
                    "",
                    rec.epsilon_o.to_string(),
                    rec.radical,
                    if rec.extra { "  [extra]" } else { "" },
                )?;
            }
            out.flush()?;
        }
    }
    Ok(())
}
