mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "apery", version, about = "Apery-like series for odd zeta values")]
struct Cli {
    /// Extra working digits on top of what each command asks for.
    #[arg(long, env = "APERY_GUARD_DIGITS", default_value_t = 0, global = true)]
    guard_digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an odd zeta value.
    Zeta(ZetaArgs),
    /// Check a finite identity exactly for n = 1..=n-max.
    Verify(VerifyArgs),
    /// Hypergeometric evaluations and the Gosper certificate.
    Hyper(HyperArgs),
    /// Integer-relation search for a row of zeta formulae.
    Discover(DiscoverArgs),
    /// Compare both sides of a generating function at one point.
    Gf(GfArgs),
    /// Time the fast series against the reference evaluation.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Output {
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum)]
    report: Option<ReportFormat>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl Output {
    fn format(self) -> ReportFormat {
        match (self.report, self.json) {
            (Some(f), _) => f,
            (None, true) => ReportFormat::Json,
            (None, false) => ReportFormat::Text,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethod {
    Fast,
    Corollary1,
    Koecher,
    Reference,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[arg(long)]
    target: u32,
    #[arg(long)]
    digits: u32,
    #[arg(long, value_enum, default_value = "fast")]
    method: ZetaMethod,
    /// Row index for the coefficient methods; derived from the target if omitted.
    #[arg(long)]
    n: Option<u32>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// finite, chu, prop43, cnk-sum, id65, prop42 or all.
    #[arg(long)]
    identity: String,
    #[arg(long)]
    n_max: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperEval {
    Cor2,
    Cor3,
    Eq61,
    Gosper,
}

#[derive(Args, Debug)]
pub struct HyperArgs {
    #[arg(long, value_enum)]
    eval: HyperEval,
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[arg(long, default_value_t = 30)]
    digits: u32,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
pub struct DiscoverArgs {
    /// Only `zeta` is supported.
    #[arg(long, default_value = "zeta")]
    target: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    digits: u32,
    /// Power-sum exponent of the basis, 2 or 4.
    #[arg(long, default_value_t = 4)]
    s: u32,
    /// Largest coefficient searched; by default the most the precision allows.
    #[arg(long)]
    max_height: Option<u64>,
    /// Newline-delimited JSON file each result is appended to.
    #[arg(long)]
    ledger: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
pub struct GfArgs {
    /// `re` or `re,im` as decimals.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, default_value_t = 50)]
    digits: u32,
    /// Use the squared-power (s = 2) generating function.
    #[arg(long)]
    koecher: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "200,300")]
    digits: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    repeats: u32,
    #[command(flatten)]
    out: Output,
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments: exit code 2.
    Usage(String),
    /// The computation itself broke down: exit code 1.
    Compute(String),
}

impl From<apery::Error> for Failure {
    fn from(e: apery::Error) -> Self {
        use apery::Error::*;
        match e {
            OutOfRange(_) | Parse(_) | InsufficientPrecision(_) | Pole(_) | Divergent(_) | NonTerminating(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn emit(reports: &[RunReport], format: ReportFormat, text: &str) {
    match format {
        ReportFormat::Text => print!("{text}"),
        ReportFormat::Json => println!("{}", report::to_json(reports)),
        ReportFormat::Csv => print!("{}", report::to_csv(reports)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guard = cli.guard_digits;
    let result = match cli.command {
        Command::Zeta(a) => commands::zeta(&a, guard).map(|r| (r, a.out)),
        Command::Verify(a) => commands::verify(&a).map(|r| (r, a.out)),
        Command::Hyper(a) => commands::hyper(&a, guard).map(|r| (r, a.out)),
        Command::Discover(a) => commands::discover(&a, guard).map(|r| (r, a.out)),
        Command::Gf(a) => commands::gf(&a, guard).map(|r| (r, a.out)),
        Command::Bench(a) => commands::bench(&a).map(|r| (r, a.out)),
    };
    match result {
        Ok(((reports, text), out)) => {
            emit(&reports, out.format(), &text);
            if reports.iter().all(RunReport::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
