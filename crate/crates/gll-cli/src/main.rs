//! `gll` — grand/small Lebesgue norms, ε-sweeps, and verification suites.
//!
//! Exit codes: 0 success, 1 verification checks failed, 2 argument/parse
//! errors, 3 domain errors (bad exponents, misaligned lengths, ...).
//! Reports go to stdout; diagnostics to stderr.

mod input;
mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gll_core::{
    epsilon_profile, grand_norm, lp_norm, small_norm_estimate, EpsilonGrid, ExponentParams,
};
use serde_json::json;

use crate::suites::{run_suite, Suite, SuiteConfig};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn domain(err: gll_core::Error) -> Self {
        CliError::Domain(err.to_string())
    }

    pub fn domain_msg(msg: impl Into<String>) -> Self {
        CliError::Domain(msg.into())
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "gll",
    about = "Grand/small Lebesgue norms, ε-sweeps, and verification suites on finite groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single norm of a function.
    Norm(NormArgs),
    /// Sweep the ε-profile φ(ε) = ε^{θ/(p-ε)} ‖f‖_{p-ε} as CSV.
    Sweep(SweepArgs),
    /// Run a verification suite; one JSON check line per property.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    /// Grand norm ‖f‖_{p),θ}.
    Grand,
    /// Small-norm bracket [lower, upper].
    Small,
    /// Plain L^q norm (use --q; `inf` gives the sup norm).
    Lp,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ExponentArgs {
    /// Base exponent p (must be > 1).
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Grand/small parameter θ (≥ 0; θ = 0 reduces to L^p).
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// Number of ε grid points.
    #[arg(long, default_value_t = 256)]
    grid_count: usize,
    /// Smallest grid ε as a fraction of p-1.
    #[arg(long, default_value_t = 1e-8)]
    grid_min_frac: f64,
}

impl ExponentArgs {
    fn grid(&self) -> EpsilonGrid {
        EpsilonGrid {
            count: self.grid_count,
            min_fraction: self.grid_min_frac,
            ..EpsilonGrid::default()
        }
    }

    fn params(&self) -> Result<ExponentParams, CliError> {
        ExponentParams::with_grid(self.p, self.theta, self.grid()).map_err(CliError::domain)
    }
}

#[derive(Args)]
struct InputArgs {
    /// Function file: .json ({"values": [...], "weights": [...]?} or a bare
    /// array) or raw little-endian f64.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Named generator: constant[:c], point_mass[:x], cosine[:k], random.
    #[arg(long = "gen")]
    generator: Option<String>,
    /// Finite abelian group, e.g. Z16 or Z2xZ8 (normalized Haar measure).
    #[arg(long)]
    group: Option<String>,
    /// Seed for the `random` generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InputArgs {
    fn resolve(&self) -> Result<(gll_core::SampledFunction, gll_core::MeasureSpace), CliError> {
        let group = self
            .group
            .as_deref()
            .map(input::parse_group)
            .transpose()?;
        input::resolve_input(
            self.input.as_deref(),
            self.generator.as_deref(),
            group.as_ref(),
            self.seed,
        )
    }
}

#[derive(Args)]
struct NormArgs {
    #[arg(long, value_enum, default_value_t = Kind::Grand)]
    kind: Kind,
    /// Exponent for --kind lp (defaults to p; accepts `inf`).
    #[arg(long)]
    q: Option<f64>,
    #[command(flatten)]
    exponents: ExponentArgs,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    exponents: ExponentArgs,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// norm_axioms | banach_algebra | module_l1 | approx_identity |
    /// multipliers | sandwich | all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Randomized trials per check.
    #[arg(long, default_value_t = 64)]
    trials: u64,
    /// Group the suites run on.
    #[arg(long, default_value = "Z16")]
    group: String,
    #[command(flatten)]
    exponents: ExponentArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("GLL_THREADS") {
        let n: usize = raw
            .parse()
            .map_err(|_| CliError::parse(format!("GLL_THREADS must be a number, got '{raw}'")))?;
        if n == 0 {
            return Err(CliError::parse("GLL_THREADS must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::parse(format!("cannot build thread pool: {e}")))?;
    }
    Ok(())
}

fn run_norm(args: &NormArgs) -> Result<i32, CliError> {
    let params = args.exponents.params()?;
    let (f, space) = args.input.resolve()?;
    match args.kind {
        Kind::Grand => {
            let value = grand_norm(&f, &params, &space).map_err(CliError::domain)?;
            match args.format {
                Format::Json => println!("{}", json!({ "value": value })),
                Format::Text => println!("{value:.16e}"),
            }
        }
        Kind::Lp => {
            let q = args.q.unwrap_or(args.exponents.p);
            if !(q >= 1.0) {
                return Err(CliError::domain_msg(format!("q = {q} must be >= 1")));
            }
            let value = lp_norm(&f, q, &space).map_err(CliError::domain)?;
            match args.format {
                Format::Json => println!("{}", json!({ "value": value })),
                Format::Text => println!("{value:.16e}"),
            }
        }
        Kind::Small => {
            let est = small_norm_estimate(&f, &params, &space).map_err(CliError::domain)?;
            match args.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&est).expect("estimate serializes")
                ),
                Format::Text => println!("{:.16e} {:.16e}", est.lower, est.upper),
            }
        }
    }
    Ok(0)
}

fn run_sweep(args: &SweepArgs) -> Result<i32, CliError> {
    let params = args.exponents.params()?;
    let (f, space) = args.input.resolve()?;
    let profile = epsilon_profile(&f, &params, &space).map_err(CliError::domain)?;
    println!("epsilon,phi");
    for (&eps, &v) in profile.epsilons.iter().zip(&profile.values) {
        println!("{eps:.16e},{v:.16e}");
    }
    let (eps_star, v_star) = profile.refined_argmax;
    println!("# refined_argmax epsilon={eps_star:.16e} value={v_star:.16e}");
    Ok(0)
}

fn run_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let suite = Suite::parse(&args.suite)?;
    let group = input::parse_group(&args.group)?;
    if args.trials == 0 {
        return Err(CliError::parse("--trials must be at least 1"));
    }
    // Validate exponents up front so a bad --p exits 3 before any work.
    args.exponents.params()?;
    let cfg = SuiteConfig {
        group,
        p: args.exponents.p,
        theta: args.exponents.theta,
        grid: args.exponents.grid(),
        trials: args.trials,
        seed: args.seed,
    };
    let lines = run_suite(suite, &cfg);
    let mut failed = 0usize;
    for line in &lines {
        println!(
            "{}",
            serde_json::to_string(line).expect("check line serializes")
        );
        if !line.pass {
            failed += 1;
        }
    }
    eprintln!(
        "{} checks, {} failed (suite={}, group={}, p={}, theta={}, trials={}, seed={})",
        lines.len(),
        failed,
        args.suite,
        args.group,
        args.exponents.p,
        args.exponents.theta,
        args.trials,
        args.seed
    );
    Ok(if failed > 0 { 1 } else { 0 })
}

fn main() {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match &cli.command {
        Command::Norm(args) => run_norm(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Verify(args) => run_verify(args),
    });
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            std::process::exit(err.exit_code());
        }
    }
}
