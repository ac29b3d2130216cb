use std::path::PathBuf;
use std::process::{Command, Output};

use abcrad::search::{search_all, SearchBounds};
use abcrad_cli::record::{from_jsonl, to_jsonl, JsonRecord};
use proptest::prelude::*;

fn abcrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abcrad")).args(args).env_remove("ABCRAD_WORKERS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("abcrad-cli-{}-{name}", std::process::id()))
}

#[test]
fn jsonl_round_trips_every_record() {
    let b = SearchBounds { max_c_bits: 64, ..SearchBounds::default() };
    let records = search_all(&b, 8).unwrap();
    assert!(records.len() > 100);
    for rec in &records {
        let line = to_jsonl(rec);
        assert_eq!(from_jsonl(&line).unwrap(), *rec, "{line}");
    }
}

#[test]
fn jsonl_omits_absent_fields_and_quotes_numbers() {
    let b = SearchBounds { max_m: 3, ..SearchBounds::default() };
    let rec = abcrad::search::search_two_prime(&b).unwrap().into_iter().find(|r| r.triple.c() == &9u8.into()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&to_jsonl(&rec)).unwrap();
    let obj = v.as_object().unwrap();
    for key in ["q", "r", "y", "q_class"] {
        assert!(!obj.contains_key(key), "{key} should be omitted");
    }
    assert_eq!(obj["C"], "9");
    assert_eq!(obj["mu"], "1");
    assert_eq!(obj["two_p_bound"], true);
}

#[test]
fn jsonl_rejects_inconsistent_records() {
    let b = SearchBounds { max_m: 9, ..SearchBounds::default() };
    let rec = abcrad::search::search_family_a(&b).unwrap().pop().unwrap();
    let mut j = JsonRecord::from(&rec);
    j.m = "10".into();
    assert!(from_jsonl(&serde_json::to_string(&j).unwrap()).is_err());
    let mut j = JsonRecord::from(&rec);
    j.c = "514".into();
    assert!(from_jsonl(&serde_json::to_string(&j).unwrap()).is_err());
    assert!(from_jsonl("{\"family\":\"a\"}").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn jsonl_round_trips_chain_records(y in 1u32..=32) {
        let rec = abcrad::SolutionRecord::from_equation(abcrad::FamilyEquation::chain(y));
        // chain members need not be prime; only prime cases yield records
        if let Ok(rec) = rec {
            prop_assert_eq!(from_jsonl(&to_jsonl(&rec)).unwrap(), rec);
        }
    }
}

#[test]
fn search_examples() {
    let o = abcrad(&["search", "--family", "a", "--max-m", "9", "--require-mf", "one"]);
    assert!(o.status.success());
    let recs: Vec<_> = stdout(&o).lines().map(|l| from_jsonl(l).unwrap()).collect();
    assert!(recs.iter().any(|r| r.equation.to_string() == "2^9 + 1 = 3^3·19"));

    let o = abcrad(&["search", "--family", "chain", "--max-y", "8"]);
    assert_eq!(stdout(&o).lines().count(), 4);

    let o = abcrad(&["search", "--family", "b", "--max-c-bits", "4"]);
    let recs: Vec<_> = stdout(&o).lines().map(|l| from_jsonl(l).unwrap()).collect();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| *r.triple.c() < 16u8.into()));
    assert!(recs.iter().any(|r| r.triple.c() == &5u8.into()));
    assert!(recs.iter().any(|r| r.triple.c() == &7u8.into()));
}

#[test]
fn search_formats_and_output_file() {
    let path = tmp("search.csv");
    let o =
        abcrad(&["search", "--family", "c", "--max-c-bits", "12", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("family,m,n,r,mu,p,q,y,A,B,C,radical,epsilon_o"));
    assert!(text.contains("c,5,2,2,1,3,17,,1,288,289,"));

    let o = abcrad(&["search", "--family", "c", "--max-c-bits", "12", "--format", "pretty"]);
    assert!(stdout(&o).contains("2^5·3^2 + 1 = 17^2"));
}

#[test]
fn verify_table_report() {
    let path = tmp("verify.csv");
    let o = abcrad(&["verify-table", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        &header[..7],
        ["row_id", "equation_text", "expected", "computed", "abs_diff", "found_by_search", "status"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(rows.len(), 29);
    assert!(rows.iter().all(|r| &r[6] == "PASS"));
    let row = |id: &str| rows.iter().find(|r| &r[0] == id).unwrap().clone();
    assert_eq!(&row("9")[3], "0.4266");
    assert_eq!(&row("20")[3], "0.2252");
    assert!(row("6")[7].contains("row 15"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
}

#[test]
fn quality_examples() {
    let o = abcrad(&["quality", "32", "49", "81"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("epsilon_o = 0.1757"));
    assert_eq!(abcrad(&["quality", "1", "1", "2"]).status.code(), Some(1));
    let o = abcrad(&["quality", "1", "9", "10"]);
    assert!(stdout(&o).contains("epsilon_o = -0.3230"));
    let o = abcrad(&["quality", "81", "32", "49", "--precision", "8"]);
    assert!(stdout(&o).contains("rad = 42"));
    assert_eq!(abcrad(&["quality", "2", "4", "6"]).status.code(), Some(1));
}

#[test]
fn props_examples() {
    let o = abcrad(&["props", "--suite", "gcd", "--iters", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let o = abcrad(&["props", "--suite", "power"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 exception(s)"));
    let o = abcrad(&["props", "--suite", "pell", "--max-g", "9"]);
    assert!(stdout(&o).contains("g=9 (x, y) = (985, 1393)"));
    assert_eq!(stdout(&o).matches("(x, y)").count(), 5);
}

#[test]
fn pell_command() {
    let o = abcrad(&["pell", "--max-g", "9"]);
    assert_eq!(stdout(&o).lines().last(), Some("9\t985\t1393\tfalse\tfalse"));
}

#[test]
fn exit_codes() {
    assert_eq!(abcrad(&["bogus"]).status.code(), Some(3));
    assert_eq!(abcrad(&["pell", "--max-g", "4"]).status.code(), Some(3));
    assert_eq!(abcrad(&["pell", "--out", "/nonexistent/dir/x"]).status.code(), Some(3));
    assert_eq!(abcrad(&["search", "--require-mf", "maybe"]).status.code(), Some(3));
    assert_eq!(abcrad(&["--help"]).status.code(), Some(0));
    // (2^61 + 15)(2^62 + 135): a semiprime no 10-step rho run can split
    let n = "10633823966279327363694553002502260713";
    let n_minus_1 = "10633823966279327363694553002502260712";
    let o = abcrad(&["--rho-iterations", "10", "quality", "1", n_minus_1, n]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn workers_env_is_read() {
    let o = Command::new(env!("CARGO_BIN_EXE_abcrad")).args(["pell"]).env("ABCRAD_WORKERS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_abcrad")).args(["pell"]).env("ABCRAD_WORKERS", "3").output().unwrap();
    assert!(o.status.success());
}
