//! `twistlab`: experiment drivers emitting deterministic JSON reports.
//!
//! Exit status is 0 when every check passes, 1 when some check fails and 2
//! for usage or data errors, which are reported as a JSON error object.

mod analytic;
mod artin_cmds;
mod converse_cmds;
mod input;
mod report;

use clap::{Args, Parser, Subcommand};
use input::{parse_complex, Source};
use report::{render, CliError, Report};
use std::path::PathBuf;
use std::process::ExitCode;
use twistlab::ComplexValue;

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Twisted L-functions, degenerate 2F1 and converse-theorem checks")]
struct Cli {
    /// Tolerance replacing the default of every check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Also write the report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Read LMFDB data from the cache only.
    #[arg(long, global = true)]
    offline: bool,
    /// Cache directory for LMFDB data (default: $TWISTLAB_CACHE_DIR or data/cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// ₂F₁(a, b; c; w) for real w, routed to the series, the connection
    /// formula or the degenerate logarithmic series, with an oracle check.
    Hyp(HypArgs),
    /// Characters mod q with conductors and Gauss sums.
    Char(CharArgs),
    /// A completed L-value, optionally twisted.
    LfunEval(LfunEvalArgs),
    /// Character-twist and additive-twist functional equations.
    TwistVerify(TwistVerifyArgs),
    /// Ingest an Euler-factor table and report the primitivity proxy.
    ArtinIngest(ArtinIngestArgs),
    /// Divide an Artin L-function of dimension 3 by ζ.
    ArtinQuotient(ArtinQuotientArgs),
    /// Ordinates of ζ zeros on the critical line.
    Zeros(ZerosArgs),
    /// Exact Vandermonde weights on a T_β node set.
    ConverseVandermonde(VandermondeArgs),
    /// Modularity, expansion, Mellin and residue checks for a pair.
    ConverseCheck(ConverseCheckArgs),
    /// HEURISTIC: Λ(ρ, φ) at ζ zeros ρ by the smoothed lane.
    CancellationDemo(DemoArgs),
}

fn complex_arg(s: &str) -> Result<ComplexValue, String> {
    parse_complex(s)
}

#[derive(Args)]
pub struct HypArgs {
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub a: ComplexValue,
    /// Defaults to a.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub b: Option<ComplexValue>,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub c: ComplexValue,
    #[arg(long, allow_hyphen_values = true)]
    pub w: f64,
}

#[derive(Args)]
pub struct CharArgs {
    #[arg(long)]
    pub modulus: u64,
}

#[derive(Args)]
pub struct LfunEvalArgs {
    /// zeta, pair:Q1:I1:Q2:I2, or an functional-equation JSON file.
    #[arg(long, default_value = "zeta")]
    pub series: String,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub s: ComplexValue,
    /// char:Q:I, cos:A:Q:R or sin:A:Q.
    #[arg(long)]
    pub twist: Option<String>,
    #[arg(long, default_value_t = 400)]
    pub length: usize,
    #[arg(long, default_value = "exact", value_parser = ["exact", "smoothed"])]
    pub lane: String,
}

#[derive(Args)]
pub struct TwistVerifyArgs {
    #[arg(long, default_value = "zeta")]
    pub series: String,
    /// Comma-separated prime moduli.
    #[arg(long, default_value = "3,7")]
    pub q: String,
    #[arg(long, default_value_t = 400)]
    pub length: usize,
}

#[derive(Args)]
pub struct ArtinIngestArgs {
    /// A table file or an LMFDB label.
    #[arg(long)]
    pub artin: String,
    #[arg(long, default_value_t = 100)]
    pub prime_bound: u64,
}

#[derive(Args)]
pub struct ArtinQuotientArgs {
    #[arg(long)]
    pub artin: String,
    #[arg(long, default_value_t = 500)]
    pub length: usize,
}

#[derive(Args)]
pub struct ZerosArgs {
    #[arg(long)]
    pub t_min: f64,
    #[arg(long)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Include (t, Z(t)) samples on the scan grid.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Args)]
pub struct VandermondeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u: i64,
    #[arg(long)]
    pub v: u64,
    #[arg(long)]
    pub level: u64,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub t0: usize,
    /// Target of the extra logarithmic constraint.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub z: Option<ComplexValue>,
    /// Number of further T_β members offered for the extra node.
    #[arg(long, default_value_t = 40)]
    pub pool: usize,
}

#[derive(Args)]
pub struct ConverseCheckArgs {
    #[arg(long, default_value = "zeta")]
    pub series: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 6)]
    pub ell0: usize,
    #[arg(long, default_value_t = 400)]
    pub length: usize,
}

#[derive(Args)]
pub struct DemoArgs {
    #[arg(long)]
    pub artin: String,
    /// JSON file with zero ordinates.
    #[arg(long)]
    pub zeros: String,
    #[arg(long, default_value_t = 1000)]
    pub coeff_length: usize,
    /// Root number W(φ), when the table carries none.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub root_number: Option<ComplexValue>,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let source = Source { offline: cli.offline, cache_dir: cli.cache_dir.clone() };
    let tol = cli.tol;
    match &cli.command {
        Command::Hyp(a) => analytic::hyp(a, tol),
        Command::Char(a) => analytic::characters(a, tol),
        Command::LfunEval(a) => analytic::lfun_eval(a, tol),
        Command::TwistVerify(a) => analytic::twist_verify(a, tol),
        Command::Zeros(a) => analytic::zeros(a, tol),
        Command::ArtinIngest(a) => artin_cmds::ingest(a, &source, tol),
        Command::ArtinQuotient(a) => artin_cmds::quotient(a, &source, tol),
        Command::CancellationDemo(a) => artin_cmds::demo(a, &source, tol),
        Command::ConverseVandermonde(a) => converse_cmds::vandermonde(a, tol),
        Command::ConverseCheck(a) => converse_cmds::check(a, tol),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hyp(_) => "hyp",
        Command::Char(_) => "char",
        Command::LfunEval(_) => "lfun-eval",
        Command::TwistVerify(_) => "twist-verify",
        Command::ArtinIngest(_) => "artin-ingest",
        Command::ArtinQuotient(_) => "artin-quotient",
        Command::Zeros(_) => "zeros",
        Command::ConverseVandermonde(_) => "converse-vandermonde",
        Command::ConverseCheck(_) => "converse-check",
        Command::CancellationDemo(_) => "cancellation-demo",
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> bool {
    print!("{text}");
    match out {
        Some(p) => match std::fs::write(p, text) {
            Ok(()) => true,
            Err(e) => {
                eprintln!("cannot write {}: {e}", p.display());
                false
            }
        },
        None => true,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(report) => {
            let ok = emit(&render(&report.to_json()), cli.out.as_ref());
            if !ok {
                ExitCode::from(2)
            } else if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            emit(&render(&e.to_json(name)), cli.out.as_ref());
            ExitCode::from(2)
        }
    }
}
