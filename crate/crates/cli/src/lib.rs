//! Command-line front end for the `abcrad` searches, the reference-table
//! verifier, single-triple quality and the lemma suites.
//!
//! Exit codes: 0 success, 1 verification failure or invalid triple,
//! 2 factorization budget exceeded, 3 I/O, parse or argument error.

pub mod args;
pub mod props;
pub mod record;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use abcrad::search::{
    fermat_chain, search_all, search_family_a, search_family_b, search_family_c, search_two_prime, SearchBounds,
    SolutionRecord,
};
use abcrad::triples::make_triple;
use abcrad::{Error, FactorBudget};

pub use args::{Cli, Command, FamilyArg, Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Fail = 1,
    Budget = 2,
    Io = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => Status::Budget,
            _ => Status::Io,
        }
    }
}

/// Stdout or a buffered file.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Runs a family search at `bounds` on the current rayon pool.
pub fn run_search(family: FamilyArg, bounds: &SearchBounds, max_y: u32) -> Result<Vec<SolutionRecord>, Error> {
    match family {
        FamilyArg::TwoPrime => search_two_prime(bounds),
        FamilyArg::A => search_family_a(bounds),
        FamilyArg::B => search_family_b(bounds),
        FamilyArg::C => search_family_c(bounds),
        FamilyArg::Chain => fermat_chain(max_y),
        FamilyArg::All => search_all(bounds, max_y),
    }
}

/// Executes `cli` inside a pool of the requested size.
pub fn run(cli: &Cli) -> Status {
    let workers = cli.workers.unwrap_or_else(default_workers);
    let result = if workers == 0 {
        Err(CliError::Usage("--workers must be at least 1".into()))
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli.command, workers, cli.budget())))
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.status()
    })
}

fn dispatch(command: &Command, workers: usize, budget: FactorBudget) -> Result<Status, CliError> {
    match command {
        Command::Search(args) => {
            let config = RunConfig::from_args(args, workers, budget);
            let records = run_search(args.family, &config.bounds, args.max_y)?;
            let out = open_output(config.output_path.as_deref())?;
            record::write_records(out, &records, config.format)?;
            Ok(Status::Ok)
        }
        Command::VerifyTable(args) => {
            let report = verify::verify_table(&SearchBounds { budget, ..SearchBounds::default() })?;
            report.write_csv(open_output(args.out.as_deref())?)?;
            let failed: Vec<&str> = report.rows.iter().filter(|r| !r.passed).map(|r| r.row_id.as_str()).collect();
            for r in report.rows.iter().filter(|r| !r.note.is_empty()) {
                eprintln!("note: row {}: {}", r.row_id, r.note);
            }
            if failed.is_empty() {
                eprintln!("verify-table: PASS ({} checks)", report.rows.len());
                Ok(Status::Ok)
            } else {
                eprintln!("verify-table: FAIL (rows {})", failed.join(", "));
                Ok(Status::Fail)
            }
        }
        Command::Quality(args) => {
            let triple = match make_triple(args.a.clone(), args.b.clone(), args.c.clone()) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("invalid triple: {e}");
                    return Ok(Status::Fail);
                }
            };
            let q = triple.quality(args.precision, &budget)?;
            let mut out = open_output(None)?;
            writeln!(out, "A = {}\nB = {}\nC = {}", triple.a(), triple.b(), triple.c())?;
            writeln!(out, "N = {}\nrad = {}\nepsilon_o = {}", q.n_value, q.radical, q.epsilon_o)?;
            out.flush()?;
            Ok(Status::Ok)
        }
        Command::Pell(args) => {
            let sols = abcrad::search::pell_negative(args.max_g)?;
            let mut out = open_output(args.out.as_deref())?;
            writeln!(out, "g\tx\ty\tx_prime\ty_prime")?;
            for s in &sols {
                writeln!(out, "{}\t{}\t{}\t{}\t{}", s.g, s.x, s.y, s.x_prime, s.y_prime)?;
            }
            out.flush()?;
            Ok(Status::Ok)
        }
        Command::Props(args) => {
            let outcomes = props::run_suite(args.suite, args, &budget)?;
            let mut out = open_output(args.out.as_deref())?;
            let mut failures = 0;
            for o in &outcomes {
                for line in &o.lines {
                    writeln!(out, "{line}")?;
                }
                failures += o.failures;
            }
            writeln!(out, "{} suite(s), {failures} failure(s)", outcomes.len())?;
            out.flush()?;
            Ok(if failures == 0 { Status::Ok } else { Status::Fail })
        }
    }
}
