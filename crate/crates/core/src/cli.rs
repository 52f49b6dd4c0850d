//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure or a
//! brute/closed disagreement, 2 on usage errors, 3 on I/O errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bernoulli::{bernoulli_polynomial, BernoulliCache};
use crate::congruences::{self, RPolicy, SweepOptions, TheoremId};
use crate::exact::parse_rational;
use crate::primes::{is_prime_u64, PrimeRange};
use crate::primesums::{evaluate, FloorSumKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Largest pmax a sweep accepts without `--allow-large`.
pub const DEFAULT_PMAX_GUARD: u64 = 500;

#[derive(Debug, Parser)]
#[command(
    name = "primecong",
    version,
    about = "Exact prime floor sums, Bernoulli values and congruence checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Bernoulli numbers and polynomial values
    Bernoulli {
        #[command(subcommand)]
        mode: BernoulliMode,
    },
    /// Evaluate a floor sum by brute force and, when known, in closed form
    Sum(SumArgs),
    /// Check a single congruence or identity
    Verify(VerifyArgs),
    /// Check theorems over every prime in a range and write a report
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
pub enum BernoulliMode {
    /// B_n
    Number { n: usize },
    /// B_n(x) for a rational x such as 2 or -3/4
    Poly {
        n: usize,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Debug, clap::Args)]
pub struct SumArgs {
    /// grid, cube-root, partial, S or T
    #[arg(long, value_parser = parse_kind)]
    pub kind: FloorSumKind,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_theorem)]
    pub theorem: TheoremId,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct SweepArgs {
    /// Comma-separated theorem names, or `all`
    #[arg(long, value_parser = parse_theorem_list)]
    pub theorems: TheoremList,
    #[arg(long, default_value_t = 3)]
    pub pmin: u64,
    #[arg(long)]
    pub pmax: u64,
    /// `all` covers every r in [1, p-1] for theorem1; `r1` only r = 1
    #[arg(long, value_parser = parse_r_policy, default_value = "all")]
    pub r_policy: RPolicy,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fixed timestamp for the JSON metadata (defaults to the current time)
    #[arg(long)]
    pub timestamp: Option<String>,
    /// Permit pmax above the default guard
    #[arg(long)]
    pub allow_large: bool,
    /// Record theorem1 residues modulo p^2 in the note column
    #[arg(long)]
    pub explore_p2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremList(pub Vec<TheoremId>);

fn parse_kind(s: &str) -> Result<FloorSumKind, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_r_policy(s: &str) -> Result<RPolicy, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_theorem_list(s: &str) -> Result<TheoremList, String> {
    if s.trim() == "all" {
        return Ok(TheoremList(TheoremId::ALL.to_vec()));
    }
    let ids = s
        .split(',')
        .filter(|part| !part.trim().is_empty())
        .map(parse_theorem)
        .collect::<Result<Vec<_>, _>>()?;
    if ids.is_empty() {
        return Err("no theorems given".into());
    }
    Ok(TheoremList(ids))
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<congruences::ReportError> for Failure {
    fn from(e: congruences::ReportError) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let cache = BernoulliCache::new();
    let result = match cli.command {
        Command::Bernoulli { mode } => cmd_bernoulli(mode, &cache, out),
        Command::Sum(args) => cmd_sum(args, &cache, out),
        Command::Verify(args) => cmd_verify(args, &cache, out),
        Command::Sweep(args) => cmd_sweep(args, &cache, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
    }
}

fn cmd_bernoulli(
    mode: BernoulliMode,
    cache: &BernoulliCache,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let value = match mode {
        BernoulliMode::Number { n } => cache.number(n),
        BernoulliMode::Poly { n, x } => {
            let x = parse_rational(&x)
                .map_err(|e| Failure::Usage(format!("invalid value for <X>: {e}")))?;
            bernoulli_polynomial(n, &x, cache)
        }
    };
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

fn require_prime_flag(p: u64) -> Result<(), Failure> {
    if !is_prime_u64(p) {
        return Err(Failure::Usage(format!(
            "invalid value for --p: {p} is not prime"
        )));
    }
    Ok(())
}

fn cmd_sum(args: SumArgs, cache: &BernoulliCache, out: &mut dyn Write) -> Result<i32, Failure> {
    require_prime_flag(args.p)?;
    let eval = evaluate(args.kind, args.p, args.q, args.r, cache)?;
    let agree = eval.agrees();
    match args.format {
        Format::Json => {
            let doc = json!({
                "kind": eval.kind.name(),
                "p": eval.p,
                "q": eval.q,
                "r": eval.r,
                "brute": eval.brute_value.to_string(),
                "closed": eval.closed_value.as_ref().map(ToString::to_string),
                "agree": agree,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text | Format::Csv => {
            writeln!(out, "brute {}", eval.brute_value)?;
            if let Some(closed) = &eval.closed_value {
                writeln!(out, "closed {closed}")?;
                writeln!(out, "{}", if agree { "agree" } else { "disagree" })?;
            }
        }
    }
    Ok(if agree { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_verify(
    args: VerifyArgs,
    cache: &BernoulliCache,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    require_prime_flag(args.p)?;
    let verdict = congruences::verify(args.theorem, args.p, args.r, cache)?;
    match args.format {
        Format::Text => writeln!(out, "{verdict}")?,
        Format::Csv => write!(
            out,
            "{}",
            congruences::to_csv(std::slice::from_ref(&verdict))?
        )?,
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&verdict).map_err(congruences::ReportError::from)?
        )?,
    }
    Ok(if verdict.pass { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_sweep(
    args: SweepArgs,
    cache: &BernoulliCache,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    if args.pmax > DEFAULT_PMAX_GUARD && !args.allow_large {
        return Err(Failure::Usage(format!(
            "--pmax {} exceeds {DEFAULT_PMAX_GUARD}; pass --allow-large to run it anyway",
            args.pmax
        )));
    }
    let range = PrimeRange::new(args.pmin, args.pmax)
        .map_err(|e| Failure::Usage(format!("invalid --pmin/--pmax: {e}")))?;
    let options = SweepOptions {
        r_policy: args.r_policy,
        explore_p2: args.explore_p2,
    };
    let mut report = congruences::sweep(&args.theorems.0, &range, &options, cache)?;
    report.metadata.timestamp = Some(args.timestamp.unwrap_or_else(|| {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        format!("unix:{secs}")
    }));

    let body = match args.format {
        Format::Csv => congruences::to_csv(&report.verdicts)?,
        Format::Json => congruences::to_json(&report)?,
        Format::Text => congruences::to_text(&report.verdicts),
    };
    let summary = format!(
        "{} verdicts, {} failures",
        report.verdicts.len(),
        report.failures()
    );
    match &args.out {
        Some(path) => {
            fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            writeln!(out, "{summary}")?;
        }
        None => {
            out.write_all(body.as_bytes())?;
            writeln!(err, "{summary}")?;
        }
    }
    Ok(if report.failures() == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}
