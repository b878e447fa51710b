use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use lcd_census::census::{census, enumerate_lcd_count, trace_form_gram, CensusRequest, CountReport, FactorKind};
use lcd_census::counting::{n_pair, FormKind};
use lcd_census::formed_oracle::{count_nondeg_module_pairs, PairedModuleSpace};
use lcd_census::{Error, PrimePower, DEFAULT_WORK_BOUND, WORK_BOUND_ENV};

#[derive(Parser)]
#[command(name = "lcd-census", version, about = "Count complementary-dual cyclic additive codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form count for one (q, t, n, form).
    Count {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Compare the closed form with exhaustive enumeration of the codes.
    Verify {
        #[command(flatten)]
        point: Point,
        #[arg(long, env = WORK_BOUND_ENV, default_value_t = DEFAULT_WORK_BOUND)]
        work_bound: u64,
        /// Also check each paired factor against a random pairing drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Sweep n over a range.
    Table {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: u32,
        #[arg(long, value_parser = parse_form)]
        form: FormKind,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Output::Csv)]
        output: Output,
    },
    /// Print the Gram matrix of the trace form over GF(q).
    Gram {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
}

#[derive(Args, Clone, Copy)]
struct Point {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    n: u64,
    #[arg(long, value_parser = parse_form)]
    form: FormKind,
}

impl Point {
    fn request(&self) -> Result<CensusRequest, Error> {
        CensusRequest::new(self.q, self.t, self.n, self.form)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

fn parse_form(s: &str) -> Result<FormKind, String> {
    s.parse::<FormKind>().map_err(|e| e.to_string())
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct TableRow {
    n: u64,
    s: usize,
    f_count: usize,
    m_count: usize,
    total: String,
}

impl TableRow {
    fn from_report(r: &CountReport) -> Self {
        TableRow {
            n: r.n,
            s: r.s,
            f_count: r.classification.set_f.len(),
            m_count: r.classification.set_m.len(),
            total: r.total.to_string(),
        }
    }

    fn csv(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.s, self.f_count, self.m_count, self.total)
    }
}

const CSV_HEADER: &str = "n,s,f_count,m_count,total";

#[derive(Debug, Serialize)]
struct VerifyOutcome {
    q: u64,
    t: u32,
    n: u64,
    form: FormKind,
    formula: String,
    oracle: String,
    agree: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pairing_checks: Vec<PairingCheck>,
}

#[derive(Debug, Serialize)]
struct PairingCheck {
    index: usize,
    d: u32,
    k: usize,
    formula: String,
    oracle: String,
}

enum Failure {
    Lib(Error),
    Mismatch,
    Io(io::Error),
    Json(serde_json::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Json(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Count { point, output } => cmd_count(&mut out, point, output),
        Command::Verify { point, work_bound, seed, output } => {
            cmd_verify(&mut out, point, work_bound, seed, output)
        }
        Command::Table { q, t, form, n_min, n_max, output } => {
            cmd_table(&mut out, q, t, form, n_min, n_max, output)
        }
        Command::Gram { point, output } => cmd_gram(&mut out, point, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::WorkBoundExceeded { .. } => 3,
                ref e if e.is_validation() => 2,
                _ => 1,
            })
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Json(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_count(out: &mut impl Write, point: Point, output: Output) -> Result<(), Failure> {
    let report = census(&point.request()?)?;
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Output::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            writeln!(out, "{}", TableRow::from_report(&report).csv())?;
        }
        Output::Text => write_report_text(out, &report)?,
    }
    Ok(())
}

fn write_report_text(out: &mut impl Write, r: &CountReport) -> io::Result<()> {
    writeln!(out, "q = {}, t = {}, n = {}, form = {}", r.q, r.t, r.n, r.form)?;
    writeln!(out, "cosets: s = {}, representatives {:?}, sizes {:?}", r.s, r.reps, r.d)?;
    let c = &r.classification;
    writeln!(out, "I = {:?}, F = {:?}, M = {:?}", c.set_i, c.set_f, c.set_m)?;
    writeln!(out, "R = {} ({:?}), per k: {}", r.r_factor, r.r_case, join(&r.r_per_k))?;
    for f in &r.factors {
        match f.kind {
            FactorKind::Unitary => writeln!(out, "unitary factor i = {} (d = {}): {}", f.index, f.d, f.value)?,
            FactorKind::Pair => writeln!(
                out,
                "pair factor h = {} with {} (d = {}): {}",
                f.index,
                f.partner.unwrap_or(f.index),
                f.d,
                f.value
            )?,
        }
    }
    let mut terms = vec![if r.r_exponent == 1 { r.r_factor.to_string() } else { format!("{}^{}", r.r_factor, r.r_exponent) }];
    terms.extend(r.factors.iter().map(|f| f.value.to_string()));
    writeln!(out, "N = {} = {}", terms.join(" x "), r.total)
}

fn join(v: &[BigUint]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_verify(
    out: &mut impl Write,
    point: Point,
    bound: u64,
    seed: Option<u64>,
    output: Output,
) -> Result<(), Failure> {
    let req = point.request()?;
    let report = census(&req)?;
    let oracle = enumerate_lcd_count(req.q, req.t, req.n, req.delta, bound)?;
    let mut pairing_checks = Vec::new();
    if let Some(seed) = seed {
        pairing_checks = check_pairings(&report, req.q, seed, bound)?;
    }
    let agree = oracle == report.total && pairing_checks.iter().all(|c| c.formula == c.oracle);
    let outcome = VerifyOutcome {
        q: report.q,
        t: report.t,
        n: report.n,
        form: report.form,
        formula: report.total.to_string(),
        oracle: oracle.to_string(),
        agree,
        pairing_checks,
    };
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&outcome)?)?,
        Output::Csv => {
            writeln!(out, "q,t,n,form,formula,oracle,agree")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                outcome.q, outcome.t, outcome.n, outcome.form, outcome.formula, outcome.oracle, outcome.agree
            )?;
        }
        Output::Text => {
            writeln!(out, "formula: {}", outcome.formula)?;
            writeln!(out, "oracle:  {}", outcome.oracle)?;
            for c in &outcome.pairing_checks {
                writeln!(
                    out,
                    "pair factor h = {} (d = {}), k = {}: formula {}, random pairing {}",
                    c.index, c.d, c.k, c.formula, c.oracle
                )?;
            }
            writeln!(out, "{}", if agree { "agree" } else { "MISMATCH" })?;
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn check_pairings(report: &CountReport, q: PrimePower, seed: u64, bound: u64) -> Result<Vec<PairingCheck>, Error> {
    let mut checks = Vec::new();
    for f in report.factors.iter().filter(|f| f.kind == FactorKind::Pair) {
        let space = PairedModuleSpace::random(q, f.d, report.t as usize, seed)?;
        let closed = n_pair(report.t, f.d, q.value());
        for k in 0..=report.t as usize {
            let oracle = count_nondeg_module_pairs(&space, k, bound)?;
            checks.push(PairingCheck {
                index: f.index,
                d: f.d,
                k,
                formula: closed.per_k[k].to_string(),
                oracle: oracle.to_string(),
            });
        }
    }
    Ok(checks)
}

fn cmd_table(
    out: &mut impl Write,
    q: u64,
    t: u32,
    form: FormKind,
    n_min: u64,
    n_max: u64,
    output: Output,
) -> Result<(), Failure> {
    let qp = PrimePower::from_value(q)?;
    form.check_admissible(qp, t)?;
    let mut rows = Vec::new();
    for n in n_min.max(1)..=n_max {
        match CensusRequest::new(q, t, n, form) {
            Ok(req) => rows.push(TableRow::from_report(&census(&req)?)),
            Err(Error::NotCoprime { .. }) => eprintln!("skipping n = {n}: gcd(n, {q}) > 1"),
            Err(e) => return Err(e.into()),
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument(format!("no admissible n in [{n_min}, {n_max}]")).into());
    }
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
        Output::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in &rows {
                writeln!(out, "{}", r.csv())?;
            }
        }
        Output::Text => {
            writeln!(out, "{:>6} {:>4} {:>4} {:>4}  total", "n", "s", "|F|", "|M|")?;
            for r in &rows {
                writeln!(out, "{:>6} {:>4} {:>4} {:>4}  {}", r.n, r.s, r.f_count, r.m_count, r.total)?;
            }
        }
    }
    Ok(())
}

fn cmd_gram(out: &mut impl Write, point: Point, output: Output) -> Result<(), Failure> {
    let req = point.request()?;
    let g = trace_form_gram(req.q, req.t, req.n as usize, req.delta)?;
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string(&g)?)?,
        Output::Csv => {
            for row in &g {
                writeln!(out, "{}", row.iter().map(u32::to_string).collect::<Vec<_>>().join(","))?;
            }
        }
        Output::Text => {
            for row in &g {
                writeln!(out, "{}", row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))?;
            }
        }
    }
    Ok(())
}
