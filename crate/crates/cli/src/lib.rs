//! Argument parsing and rendering for the `wythoff` binary.
//!
//! Each subcommand produces an [`Output`]: the data stream (stdout or the
//! `--out` file), an optional summary for stderr, and an exit code.
//! Exit codes: 0 success, 1 a check failed or the position is losing,
//! 2 bad arguments, 3 capacity or integer-width overflow.

pub mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use wythoff::game::{self, GameError, GameState, Move, MAX_SOLVER_CAP};
use wythoff::primes::{PrimeError, PrimeGapTable};
use wythoff::seq::{beatty_p, beatty_q, build_recursive, SeqError};
use wythoff::verify::{self, Identity, Status, VerificationReport, VerifyError};

pub use render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "wythoff",
    version,
    about = "Wythoff pairs: generation, verification, game queries"
)]
pub struct Cli {
    /// Write the data stream to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate p(n), q(n) recursively, by closed form, or both.
    Gen(GenArgs),
    /// Check identities over exhaustive ranges.
    Verify(VerifyArgs),
    /// Classify a position as LOSING or WINNING for the player to move.
    Classify(ClassifyArgs),
    /// Print a move from a winning position into a losing one.
    BestMove(StateArgs),
    /// Tabulate E(n) = p(n) - floor(n*phi).
    ErrorTerm(ErrorTermArgs),
    /// Check Q(P(n) - n - 1) = P(n) - 1 for primes P and composites Q.
    Primes(PrimesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recursive,
    Beatty,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Closed,
    Brute,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = Method::Recursive)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Registry name, e.g. L4, C-pair, E-zero, game-equiv, prime-claim.
    #[arg(long, conflicts_with = "all")]
    pub identity: Option<Identity>,
    /// Run every identity (the default when --identity is absent).
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..))]
    pub game_cap: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub prime_n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub a: u64,
    pub b: u64,
    #[arg(long, value_enum, default_value_t = Oracle::Closed)]
    pub oracle: Oracle,
    /// Solver cap for the brute oracle.
    #[arg(long, default_value_t = 300)]
    pub cap: u64,
    /// Also print a winning move (closed oracle).
    #[arg(long)]
    pub with_move: bool,
}

#[derive(Debug, Args)]
pub struct ErrorTermArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PrimesArgs {
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(3..))]
    pub n_max: u64,
    /// Sieve bound; sized automatically from --n-max when omitted.
    #[arg(long)]
    pub sieve_limit: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<SeqError> for CliError {
    fn from(e: SeqError) -> Self {
        match e {
            SeqError::Overflow { .. } | SeqError::Capacity { .. } => {
                CliError::Capacity(e.to_string())
            }
            SeqError::ZeroIndex | SeqError::OutOfRange { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Seq(e) => e.into(),
            GameError::Capacity { .. } | GameError::OutsideSolved { .. } => {
                CliError::Capacity(e.to_string())
            }
            GameError::IllegalMove { .. } | GameError::NoWinningMove(_) => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

impl From<PrimeError> for CliError {
    fn from(e: PrimeError) -> Self {
        match e {
            PrimeError::IndexBelowThree(_) => CliError::Usage(e.to_string()),
            PrimeError::Capacity { .. } | PrimeError::SieveTooSmall { .. } => {
                CliError::Capacity(e.to_string())
            }
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::UnknownIdentity(_) => CliError::Usage(e.to_string()),
            VerifyError::Seq(e) => e.into(),
            VerifyError::Game(e) => e.into(),
            VerifyError::Prime(e) => e.into(),
        }
    }
}

/// Result of one subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub data: String,
    pub summary: Option<String>,
    pub exit_code: u8,
}

impl Output {
    fn ok(data: String) -> Self {
        Self {
            data,
            summary: None,
            exit_code: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub n: u64,
    pub p: u64,
    pub q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BothRow {
    pub n: u64,
    pub p_rec: u64,
    pub q_rec: u64,
    pub p_beatty: u64,
    pub q_beatty: u64,
    pub e: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub n: u64,
    pub p: u64,
    pub floor_phi_n: u64,
    pub e: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub n: u64,
    pub p_n: u64,
    pub index: u64,
    pub q_at_index: u64,
    pub holds: bool,
}

/// Flat per-identity record for CSV and table output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub id: String,
    pub status: String,
    pub lo: Option<u64>,
    pub hi: Option<u64>,
    pub passed: bool,
    pub failures: u64,
}

impl From<&VerificationReport> for VerifyRow {
    fn from(r: &VerificationReport) -> Self {
        Self {
            id: r.identity.id().to_string(),
            status: status_label(r.status()).to_string(),
            lo: r.range.map(|r| r.lo),
            hi: r.range.map(|r| r.hi),
            passed: r.passed,
            failures: r.failures,
        }
    }
}

fn status_label(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::ConjectureCounterexample => "conjecture-counterexample",
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Classify(args) => cmd_classify(args),
        Command::BestMove(args) => cmd_best_move(args),
        Command::ErrorTerm(args) => cmd_error_term(args),
        Command::Primes(args) => cmd_primes(args),
    }
}

pub fn gen_pair_rows(n_max: u64, method: Method) -> Result<Vec<PairRow>, CliError> {
    match method {
        Method::Recursive => {
            let t = build_recursive(n_max)?;
            Ok((1..=n_max)
                .map(|n| PairRow {
                    n,
                    p: t.p(n).unwrap(),
                    q: t.q(n).unwrap(),
                })
                .collect())
        }
        Method::Beatty => (1..=n_max)
            .map(|n| {
                Ok(PairRow {
                    n,
                    p: beatty_p(n)?,
                    q: beatty_q(n)?,
                })
            })
            .collect(),
        Method::Both => Err(CliError::Usage(
            "method `both` produces combined rows".into(),
        )),
    }
}

pub fn gen_both_rows(n_max: u64) -> Result<Vec<BothRow>, CliError> {
    let t = build_recursive(n_max)?;
    (1..=n_max)
        .map(|n| {
            let rec = t.error_term(n)?;
            Ok(BothRow {
                n,
                p_rec: rec.p_n,
                q_rec: t.q(n)?,
                p_beatty: rec.floor_phi_n,
                q_beatty: beatty_q(n)?,
                e: rec.e,
            })
        })
        .collect()
}

pub fn error_rows(n_max: u64) -> Result<Vec<ErrorRow>, CliError> {
    let t = build_recursive(n_max)?;
    (1..=n_max)
        .map(|n| {
            let r = t.error_term(n)?;
            Ok(ErrorRow {
                n,
                p: r.p_n,
                floor_phi_n: r.floor_phi_n,
                e: r.e,
            })
        })
        .collect()
}

pub fn prime_rows(n_max: u64, sieve_limit: Option<u64>) -> Result<Vec<PrimeRow>, CliError> {
    let table = match sieve_limit {
        Some(limit) => PrimeGapTable::build(limit)?,
        None => PrimeGapTable::build_for_count(n_max)?,
    };
    (3..=n_max)
        .map(|n| {
            let ev = table.check_prime_claim(n)?;
            Ok(PrimeRow {
                n,
                p_n: ev.p_n,
                index: ev.index,
                q_at_index: ev.q_at_index,
                holds: ev.holds,
            })
        })
        .collect()
}

fn cmd_gen(args: &GenArgs) -> Result<Output, CliError> {
    let meta = json!({
        "command": "gen",
        "n_max": args.n_max,
        "method": format!("{:?}", args.method).to_lowercase(),
    });
    let data = match args.method {
        Method::Both => render::rows(args.format, &meta, &gen_both_rows(args.n_max)?, None)?,
        m => render::rows(args.format, &meta, &gen_pair_rows(args.n_max, m)?, None)?,
    };
    Ok(Output::ok(data))
}

pub fn histogram(rows: &[ErrorRow]) -> BTreeMap<i64, u64> {
    let mut h = BTreeMap::new();
    for r in rows {
        *h.entry(r.e).or_insert(0) += 1;
    }
    h
}

fn cmd_error_term(args: &ErrorTermArgs) -> Result<Output, CliError> {
    let rows = error_rows(args.n_max)?;
    let hist = histogram(&rows);
    let meta = json!({ "command": "error-term", "n_max": args.n_max });
    let summary_json = json!({
        "histogram": hist.iter().map(|(e, c)| (e.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
    });
    let summary_text = format!(
        "histogram of e: {}",
        hist.iter()
            .map(|(e, c)| format!("{e}: {c}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let data = render::rows(args.format, &meta, &rows, Some(&summary_json))?;
    Ok(Output {
        data,
        summary: Some(summary_text),
        exit_code: 0,
    })
}

fn cmd_primes(args: &PrimesArgs) -> Result<Output, CliError> {
    let rows = prime_rows(args.n_max, args.sieve_limit)?;
    let held = rows.iter().filter(|r| r.holds).count();
    let meta = json!({
        "command": "primes",
        "n_max": args.n_max,
        "sieve_limit": args.sieve_limit,
    });
    let summary_json = json!({ "checked": rows.len(), "held": held });
    let data = render::rows(args.format, &meta, &rows, Some(&summary_json))?;
    Ok(Output {
        data,
        summary: Some(format!(
            "claim held for {held} of {} values of n",
            rows.len()
        )),
        exit_code: if held == rows.len() { 0 } else { 1 },
    })
}

pub fn run_verify(args: &VerifyArgs) -> Result<Vec<VerificationReport>, CliError> {
    match args.identity {
        Some(id) => {
            let n = match id {
                Identity::GameEquivalence => args.game_cap,
                Identity::PrimeClaim => args.prime_n_max,
                _ => args.n_max,
            };
            Ok(vec![verify::verify_identity(id, n)?])
        }
        None => Ok(verify::verify_all(
            args.n_max,
            args.game_cap,
            args.prime_n_max,
        )),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<Output, CliError> {
    let reports = run_verify(args)?;
    let passed = reports.iter().filter(|r| r.passed).count();
    let meta = json!({
        "command": "verify",
        "identity": args.identity.map(|i| i.id()),
        "n_max": args.n_max,
        "game_cap": args.game_cap,
        "prime_n_max": args.prime_n_max,
    });
    let data = match args.format {
        Format::Table => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.to_string());
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let rows: Vec<VerifyRow> = reports.iter().map(VerifyRow::from).collect();
            render::rows(Format::Csv, &meta, &rows, None)?
        }
        Format::Json => {
            let records: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({
                        "id": r.identity.id(),
                        "kind": if r.identity.is_conjecture() { "conjecture" } else { "identity" },
                        "status": status_label(r.status()),
                        "range": r.range,
                        "passed": r.passed,
                        "failures": r.failures,
                        "counterexamples": r.counterexamples,
                        "error": r.error,
                    })
                })
                .collect();
            render::json_document(&meta, &records, None)?
        }
    };
    Ok(Output {
        data,
        summary: Some(format!("{passed}/{} reports passed", reports.len())),
        exit_code: if passed == reports.len() { 0 } else { 1 },
    })
}

/// Describes `m` in terms of the piles as the user gave them.
pub fn describe_move(x: u64, y: u64, m: Move) -> String {
    // Canonical `a` is the smaller pile; map it back to the caller's order.
    let (small, large) = if x <= y {
        ("first", "second")
    } else {
        ("second", "first")
    };
    match m {
        Move::TakeBoth(k) => format!("take {k} from both"),
        Move::TakeA(k) => format!("take {k} from the {small} pile"),
        Move::TakeB(k) => format!("take {k} from the {large} pile"),
    }
}

fn cmd_classify(args: &ClassifyArgs) -> Result<Output, CliError> {
    let s = GameState::new(args.a, args.b);
    let c = match args.oracle {
        Oracle::Closed => {
            let mut c = game::classify_closed_form(s)?;
            if args.with_move && !c.is_losing() {
                c.witness = Some(game::best_move(s)?);
            }
            c
        }
        Oracle::Brute => {
            if args.cap > MAX_SOLVER_CAP {
                return Err(CliError::Capacity(format!(
                    "solver cap {} exceeds the limit {MAX_SOLVER_CAP}",
                    args.cap
                )));
            }
            if s.b() > args.cap {
                return Err(CliError::Capacity(format!(
                    "state {s} exceeds the solver cap {}; raise --cap",
                    args.cap
                )));
            }
            game::solve_retrograde(args.cap)?.get(s)?
        }
    };
    let mut line = if c.is_losing() {
        "LOSING".to_string()
    } else {
        "WINNING".to_string()
    };
    if let Some(m) = c.witness {
        line.push_str(": ");
        line.push_str(&describe_move(args.a, args.b, m));
    }
    line.push('\n');
    Ok(Output::ok(line))
}

fn cmd_best_move(args: &StateArgs) -> Result<Output, CliError> {
    let s = GameState::new(args.a, args.b);
    if game::classify_closed_form(s)?.is_losing() {
        return Ok(Output {
            data: String::new(),
            summary: Some("position is losing".into()),
            exit_code: 1,
        });
    }
    let m = game::best_move(s)?;
    Ok(Output::ok(format!(
        "{}\n",
        describe_move(args.a, args.b, m)
    )))
}
