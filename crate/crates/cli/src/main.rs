//! `seidel`: enumerate, construct and bound determinants of tournament
//! Seidel matrices.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 expectation
//! mismatch, 3 internal invariant violation.

mod commands;
mod expect;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "seidel", version, about = "Determinants and characteristic polynomials of tournament Seidel matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exhaustive determinant or characteristic-polynomial sets.
    Enumerate(EnumerateArgs),
    /// Explicit constructions; matrices are written as JSON-lines records.
    Construct(ConstructArgs),
    /// Second-moment table of the determinant.
    Stats(StatsArgs),
    /// Bounds on sqrt(det) at one order.
    Bounds(BoundsArgs),
    /// Run a named invariant suite.
    Verify(VerifyArgs),
    /// Find a matrix of order n with sqrt(det) = k.
    Membership(MembershipArgs),
    /// Seeded greedy search for the largest determinant.
    Climb(ClimbArgs),
    /// Monte Carlo moments of det.
    Sample(SampleArgs),
    /// Describe matrix records read from stdin.
    Inspect(OutputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "what", required = true, multiple = false)]
struct EnumerateArgs {
    #[arg(long, group = "what")]
    dets: bool,
    #[arg(long, group = "what")]
    charpolys: bool,
    #[arg(short)]
    n: usize,
    #[arg(long)]
    workers: Option<usize>,
    /// Reference fixture (JSON) the result must match.
    #[arg(long)]
    expect: Option<PathBuf>,
    /// Leave out wall-clock time so reports are byte-identical.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(subcommand)]
    which: Construction,
    /// Recompute the certificate's claim from the matrix.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand, Debug)]
enum Construction {
    /// Transitive tournament of order n.
    Transitive {
        #[arg(short)]
        n: usize,
    },
    /// Join of the first two records on stdin.
    Join,
    /// Order n + 2 with sqrt(det) = k.
    TargetDet {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: u64,
    },
    /// Quadratic residue tournament for a prime p = 3 (mod 4).
    Residue {
        #[arg(short)]
        p: u64,
    },
    /// Borders the record on stdin with an all-ones row.
    Border,
    /// Order 2k + 1 with eigenvalues +-sqrt(4k - 1) i.
    Hc1 {
        #[arg(short)]
        k: usize,
    },
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(short)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// pfaffian-square, join-mult, reversal-formula, jacobi, interlace or moments.
    suite: String,
    #[arg(short)]
    n: Option<usize>,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct MembershipArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: u64,
    #[arg(long, default_value_t = seidel_core::search::DEFAULT_MEMBERSHIP_BUDGET)]
    budget: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ClimbArgs {
    #[arg(short)]
    n: usize,
    #[arg(long, default_value_t = seidel_core::search::DEFAULT_CLIMB_BUDGET)]
    budget: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(short)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Everything that determines a command's output; embedded in reports.
#[derive(Debug, Default, Serialize)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Mismatch(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "error: {m}"),
            Failure::Mismatch(m) => write!(f, "mismatch: {m}"),
            Failure::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

impl From<seidel_core::Error> for Failure {
    fn from(e: seidel_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Writes `text` to `--out` or stdout.
fn emit(out: &OutputArgs, text: &str) -> CmdResult {
    match &out.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Construct(a) => commands::construct(a),
        Command::Stats(a) => commands::stats(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Verify(a) => commands::verify(a),
        Command::Membership(a) => commands::membership(a),
        Command::Climb(a) => commands::climb(a),
        Command::Sample(a) => commands::sample(a),
        Command::Inspect(a) => commands::inspect(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}
