//! Lemma and scan suites behind `props`.
//!
//! A suite fails only on a broken invariant. The ε = 1 scan inside the
//! preamble suite is reported but never counted as a failure.

use abcrad::lemma::{
    eq1_scan, gcd_lemma_fuzz, perfect_power_exception_scan, preamble_sweep, zsigmondy_witness, RandomInstances,
};
use abcrad::search::{nagell_ljunggren_scan, pell_negative, NagellSolution};
use abcrad::{FactorBudget, Natural, Sign};

use crate::args::{PropsArgs, Suite};
use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub failures: u64,
    pub lines: Vec<String>,
}

impl SuiteOutcome {
    fn new(suite: &'static str) -> Self {
        SuiteOutcome { suite, ..Default::default() }
    }

    fn log(&mut self, line: String) {
        self.lines.push(format!("{}: {line}", self.suite));
    }

    fn fail(&mut self, line: String) {
        self.failures += 1;
        self.log(format!("FAIL {line}"));
    }
}

/// Nagell–Ljunggren solutions with positive `x`.
pub const KNOWN_NAGELL: [(u64, u32, u64, u32); 3] = [(3, 5, 11, 2), (7, 4, 20, 2), (18, 3, 7, 3)];

pub fn run_suite(suite: Suite, args: &PropsArgs, budget: &FactorBudget) -> Result<Vec<SuiteOutcome>, CliError> {
    Ok(match suite {
        Suite::Gcd => vec![gcd(args)?],
        Suite::Preamble => vec![preamble(args, budget)?],
        Suite::Power => vec![power(args)?],
        Suite::Zsigmondy => vec![zsigmondy(args, budget)?],
        Suite::Pell => vec![pell(args)?],
        Suite::Nagell => vec![nagell(args)?],
        Suite::All => {
            let mut all = Vec::new();
            for s in [Suite::Gcd, Suite::Preamble, Suite::Power, Suite::Zsigmondy, Suite::Pell, Suite::Nagell] {
                all.extend(run_suite(s, args, budget)?);
            }
            all
        }
    })
}

fn gcd(args: &PropsArgs) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("gcd");
    let fuzz = gcd_lemma_fuzz(args.iters, args.seed)?;
    for (g, h, u, v, a, mu) in &fuzz.equality_failures {
        out.fail(format!("gcd identity at g={g} h={h} u={u} v={v} a={a} mu={}", mu.value()));
    }
    if fuzz.quotient_failures > 0 {
        out.fail(format!("{} instances with R <= a", fuzz.quotient_failures));
    }
    if fuzz.gcd_right_outside > 0 {
        out.fail(format!("{} instances with gcd(S, a) outside {{1, a}}", fuzz.gcd_right_outside));
    }
    out.log(format!("{} instances, seed {}, {} failures", fuzz.checked, args.seed, out.failures));
    Ok(out)
}

fn preamble(args: &PropsArgs, budget: &FactorBudget) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("preamble");
    let sweep = preamble_sweep(args.max_p, budget)?;
    for (p, g) in &sweep.failures {
        out.fail(format!("radical inequality at P={p} G={g}"));
    }
    out.log(format!("{} pairs (P, G) with P < {}, {} failures", sweep.checked, args.max_p, sweep.failures.len()));

    let mut sampler = RandomInstances::new(args.seed, args.max_p)?;
    let report = eq1_scan(&mut sampler, args.samples, budget)?;
    out.log(format!(
        "eq1 scan: {} instances (seed {}, {} draws skipped), {} violations [logged only]",
        report.checked,
        args.seed,
        sampler.skipped,
        report.violations.len()
    ));
    for v in &report.violations {
        out.log(format!("eq1 violation P={} G={} s={} t={}", v.p, v.g, v.s, v.t));
    }
    Ok(out)
}

fn power(args: &PropsArgs) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("power");
    let hits = perfect_power_exception_scan(args.max_m)?;
    for h in &hits {
        let sign = if h.mu == Sign::Plus { '+' } else { '-' };
        out.log(format!("2^{} {sign} 1 = {}^{}", h.m, h.base, h.exp));
    }
    let expected = usize::from(args.max_m >= 3);
    let only_known = hits.iter().all(|h| h.m == 3 && h.mu == Sign::Plus && h.base == Natural::from(3u8) && h.exp == 2);
    if hits.len() != expected || !only_known {
        out.fail(format!("expected {expected} exception(s), found {}", hits.len()));
    }
    out.log(format!("m <= {}: {} exception(s)", args.max_m, hits.len()));
    Ok(out)
}

fn zsigmondy(args: &PropsArgs, budget: &FactorBudget) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("zsigmondy");
    let two = Natural::from(2u8);
    let mut empty = Vec::new();
    for n in 2..=args.max_k {
        let w = zsigmondy_witness(&two, n, budget)?;
        if w.is_none() {
            empty.push(n);
        }
        if w.is_none() != (n == 6) {
            out.fail(format!("base 2, n={n}: witness {w:?}"));
        }
    }
    out.log(format!("base 2, 2 <= n <= {}: no witness at n in {empty:?}", args.max_k));
    Ok(out)
}

fn pell(args: &PropsArgs) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("pell");
    let sols = pell_negative(args.max_g)?;
    for s in &sols {
        out.log(format!("g={} (x, y) = ({}, {}) prime: ({}, {})", s.g, s.x, s.y, s.x_prime, s.y_prime));
        if &s.y * &s.y + 1u8 != &s.x * &s.x * 2u8 {
            out.fail(format!("g={} does not satisfy y^2 - 2x^2 = -1", s.g));
        }
    }
    if sols.len() as u64 != args.max_g.div_ceil(2) {
        out.fail(format!("expected {} pairs, got {}", args.max_g.div_ceil(2), sols.len()));
    }
    Ok(out)
}

fn nagell(args: &PropsArgs) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("nagell");
    let sols = nagell_ljunggren_scan(args.max_x, args.max_n)?;
    let known: Vec<NagellSolution> =
        KNOWN_NAGELL.iter().map(|&(x, n, y, z)| NagellSolution { x, n, y: Natural::from(y), z }).collect();
    for s in &sols {
        out.log(format!("({}^{} - 1)/({} - 1) = {}^{}", s.x, s.n, s.x, s.y, s.z));
        if !known.contains(s) {
            out.fail(format!("unexpected solution {s:?}"));
        }
    }
    for k in known.iter().filter(|k| k.x <= args.max_x && k.n <= args.max_n) {
        if !sols.contains(k) {
            out.fail(format!("missing solution {k:?}"));
        }
    }
    out.log(format!("x <= {}, n <= {}: {} solution(s)", args.max_x, args.max_n, sols.len()));
    Ok(out)
}
