use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use powsum::campaign::{
    emit_report, parse_rational, parse_rational_list, run_campaign, Format, GridSpec, Report,
    EXIT_ALL_HOLD, EXIT_FINDINGS, EXIT_INDETERMINATE, EXIT_IO, EXIT_USAGE,
};
use powsum::engine::{replay_monotonicity, CheckName};
use powsum::numeric::{ArithMode, EvalConfig, Outcome, PrecisionPolicy};
use powsum::Error;

/// Other failures (domain errors at maximum precision, malformed report input).
const EXIT_SOFTWARE: i32 = 70;

#[derive(Parser)]
#[command(name = "powsum", version, about = "Rigorous checks of power-sum ratio inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check over a parameter grid and print a report.
    Check(CheckArgs),
    /// Replay the monotonicity argument step by step at one parameter point.
    Replay(ReplayArgs),
    /// Scan P_n(r) >= P_n(r') over pairs r < r'.
    Scan(ScanArgs),
    /// Re-emit a saved JSON report in another format or location.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Interval,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct Precision {
    /// Initial interval precision in bits.
    #[arg(long, value_name = "BITS")]
    precision_start: Option<u32>,
    /// Maximum interval precision in bits.
    #[arg(long, value_name = "BITS")]
    precision_max: Option<u32>,
}

impl Precision {
    fn policy(&self) -> powsum::Result<PrecisionPolicy> {
        let base = PrecisionPolicy::from_env()?;
        PrecisionPolicy::new(
            self.precision_start.unwrap_or(base.start_bits),
            self.precision_max.unwrap_or(base.max_bits),
            base.escalation_factor,
        )
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// alzer, martins, alzer_neg_lower, alzer_neg_upper, bennett_r1_upper,
    /// bennett_r1_reversed, corollary1, lemma23_grid, theorem1, ineq311, problem1
    name: String,
    #[arg(long, default_value_t = 1)]
    n_min: u64,
    #[arg(long, default_value_t = 100)]
    n_max: u64,
    /// Comma-separated exponents, each p/q or an integer.
    #[arg(long, allow_hyphen_values = true, value_name = "LIST")]
    r: String,
    #[arg(long, allow_hyphen_values = true, value_name = "LIST")]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true, value_name = "LIST")]
    rprime: Option<String>,
    #[arg(long, value_enum, default_value = "interval")]
    mode: ModeArg,
    #[command(flatten)]
    precision: Precision,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, allow_hyphen_values = true)]
    r: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, value_enum, default_value = "interval")]
    mode: ModeArg,
    #[command(flatten)]
    precision: Precision,
}

#[derive(Args)]
struct ScanArgs {
    /// Only `problem1` is available.
    target: String,
    #[arg(long, default_value_t = 1)]
    n_min: u64,
    #[arg(long)]
    n_max: u64,
    #[arg(long, allow_hyphen_values = true, value_name = "LIST")]
    r: String,
    #[arg(long, allow_hyphen_values = true, value_name = "LIST")]
    rprime: String,
    #[command(flatten)]
    precision: Precision,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ReportArgs {
    /// Saved JSON report; standard input when absent.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

fn arith(mode: ModeArg) -> ArithMode {
    match mode {
        ModeArg::Exact => ArithMode::Exact,
        ModeArg::Interval => ArithMode::Interval,
    }
}

fn list(s: &Option<String>) -> powsum::Result<Vec<BigRational>> {
    s.as_deref().map(parse_rational_list).transpose().map(Option::unwrap_or_default)
}

fn finish(report: &Report, output: &Output) -> powsum::Result<i32> {
    emit_report(report, output.format.into(), output.out.as_deref())?;
    let s = report.summary;
    eprintln!(
        "{}: {} holds, {} fails, {} indeterminate",
        report.campaign.check, s.holds, s.fails, s.indeterminate
    );
    Ok(report.exit_code())
}

fn run(cli: Cli) -> powsum::Result<i32> {
    match cli.command {
        Command::Check(a) => {
            let check: CheckName = a.name.parse()?;
            let grid = GridSpec::new(check, a.n_min, a.n_max, parse_rational_list(&a.r)?)
                .alpha(list(&a.alpha)?)
                .rprime(list(&a.rprime)?)
                .mode(arith(a.mode))
                .policy(a.precision.policy()?);
            finish(&run_campaign(&grid)?, &a.output)
        }
        Command::Replay(a) => {
            let cfg = EvalConfig { mode: arith(a.mode), policy: a.precision.policy()? };
            let trace = replay_monotonicity(a.n, &parse_rational(&a.r)?, &parse_rational(&a.alpha)?, &cfg)?;
            println!("{trace}");
            Ok(match trace.overall().outcome {
                Outcome::Holds => EXIT_ALL_HOLD,
                Outcome::Fails => EXIT_FINDINGS,
                Outcome::Indeterminate => EXIT_INDETERMINATE,
            })
        }
        Command::Scan(a) => {
            if a.target != "problem1" {
                return Err(Error::Usage(format!("unknown scan '{}' (only problem1)", a.target)));
            }
            let grid = GridSpec::new(CheckName::Problem1, a.n_min, a.n_max, parse_rational_list(&a.r)?)
                .rprime(parse_rational_list(&a.rprime)?)
                .policy(a.precision.policy()?);
            let report = run_campaign(&grid)?;
            for f in report.findings() {
                eprintln!(
                    "finding: n = {}, r = {}, rprime = {}: {} < {}",
                    f.n.unwrap_or_default(),
                    f.r,
                    f.rprime.as_deref().unwrap_or(""),
                    f.lhs.as_deref().unwrap_or(""),
                    f.rhs.as_deref().unwrap_or("")
                );
            }
            finish(&report, &a.output)
        }
        Command::Report(a) => {
            let text = match &a.input {
                Some(p) => std::fs::read_to_string(p)?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let report = Report::from_json(&text)?;
            emit_report(&report, a.output.format.into(), a.output.out.as_deref())?;
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("powsum: {e}");
            match e {
                Error::Usage(_) => EXIT_USAGE,
                Error::Io(_) => EXIT_IO,
                _ => EXIT_SOFTWARE,
            }
        }
    };
    ExitCode::from(code as u8)
}
