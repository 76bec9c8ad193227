//! Command-line harness: build coefficient families, estimate convergence
//! abscissas, and run the verification experiments, emitting JSON reports
//! and CSV plot data.
//!
//! Exit status: 0 on success or a passing experiment, 1 when an experiment
//! ran cleanly but failed its check, 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dirichlet_abscissa::bohrlift::OptimizerConfig;
use dirichlet_abscissa::experiments::{
    run_abscissa, run_bohr_check, run_gen, run_thm1_sweep, run_thm2_check, run_wintner_mc,
    AbscissaRunConfig, BohrCampaignConfig, ChainRunConfig, FamilyName, FamilySpec, GenConfig,
    SeriesInput, SweepConfig, WhichAbscissas, WintnerMcConfig,
};
use dirichlet_abscissa::report::ExperimentReport;
use dirichlet_abscissa::{Error, Result};

#[derive(Parser)]
#[command(
    name = "abscissa",
    version,
    about = "Convergence abscissas of ordinary Dirichlet series, estimated from truncations"
)]
struct Cli {
    /// Cap the worker-thread count (0 or omitted: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a coefficient family to CSV (`n,re,im`).
    Gen(GenArgs),
    /// Estimate the abscissas of a family or a coefficient CSV.
    Abscissa(AbscissaArgs),
    /// Measure the absolute-vs-simple gap of the gap family across alphas.
    Thm1Sweep(SweepArgs),
    /// Monte Carlo over random multiplicative sign choices.
    WintnerMc(WintnerArgs),
    /// Random-polynomial campaign for the weighted coefficient majorant.
    BohrCheck(BohrArgs),
    /// Euler-product bound chain plus the absolute/uniform estimate gap.
    Thm2Check(ChainArgs),
}

/// Flags shared by every command that names a built-in family.
#[derive(Args)]
struct FamilyArgs {
    /// One of: zeta, lchi3, galpha, thm1, wintner, mobius.
    #[arg(long)]
    family: String,

    /// Gap parameter in (0, 1); required by galpha and thm1.
    #[arg(long)]
    alpha: Option<f64>,

    /// Seed for the random-sign family.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Force every random sign to -1 (turns wintner into the Möbius row).
    #[arg(long)]
    force_minus: bool,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let mut spec = FamilySpec::new(FamilyName::parse(&self.family)?);
        spec.alpha = self.alpha;
        spec.seed = self.seed;
        spec.force_minus = self.force_minus;
        Ok(spec)
    }
}

/// Sup-norm optimizer flags, defaulting to the library defaults.
#[derive(Args)]
struct OptimizerArgs {
    /// Random restarts per sup-norm search.
    #[arg(long, default_value_t = OptimizerConfig::default().restarts)]
    restarts: usize,

    /// Maximum coordinate sweeps per start.
    #[arg(long, default_value_t = OptimizerConfig::default().coordinate_sweeps)]
    sweeps: usize,

    /// Seed for the restart angles.
    #[arg(long, default_value_t = 0)]
    opt_seed: u64,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts,
            coordinate_sweeps: self.sweeps,
            seed: self.opt_seed,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,

    /// Truncation length.
    #[arg(long = "N")]
    n: usize,

    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AbscissaArgs {
    /// Built-in family name (alternative to --input).
    #[arg(long)]
    family: Option<String>,

    /// Gap parameter in (0, 1); required by galpha and thm1.
    #[arg(long)]
    alpha: Option<f64>,

    /// Seed for the random-sign family.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Force every random sign to -1.
    #[arg(long)]
    force_minus: bool,

    /// Coefficient CSV to read (alternative to --family).
    #[arg(long)]
    input: Option<PathBuf>,

    /// Truncation length (required with --family, optional with --input).
    #[arg(long = "N")]
    n: Option<usize>,

    /// Which abscissas to estimate: a subset of the letters c, b, a.
    #[arg(long, default_value = "ca")]
    which: String,

    /// Multiply a_n by n^{-shift} before estimating.
    #[arg(long)]
    shift: Option<f64>,

    #[command(flatten)]
    optimizer: OptimizerArgs,

    /// Write sample trails to {prefix}.{sigma}.csv.
    #[arg(long)]
    trails: Option<PathBuf>,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Gap targets in [0, 1]; 0 and 1 map to the zeta and character rows.
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
    alphas: Vec<f64>,

    /// Truncation length.
    #[arg(long = "N", default_value_t = 1_000_000)]
    n: usize,

    /// Allowed |gap - alpha|.
    #[arg(long, default_value_t = 0.1)]
    tolerance: f64,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct WintnerArgs {
    /// Number of independent sign draws.
    #[arg(long, default_value_t = 20)]
    trials: usize,

    /// Truncation length.
    #[arg(long = "N", default_value_t = 1_000_000)]
    n: usize,

    /// Base seed; trial t derives its own stream from (seed, t).
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Force every sign to -1 (Möbius sanity run, reported without verdict).
    #[arg(long)]
    force_minus: bool,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BohrArgs {
    /// Random polynomials per radius.
    #[arg(long, default_value_t = 500)]
    count: usize,

    /// Polynomial degree.
    #[arg(long, default_value_t = 20)]
    degree: usize,

    /// Radii in [0, 1).
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.1,0.3333333333333333,0.6,0.9"
    )]
    radii: Vec<f64>,

    /// Seed for the polynomial coefficients.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    family: FamilyArgs,

    /// Truncation length.
    #[arg(long = "N")]
    n: usize,

    /// Exponents at which to check the bound chain.
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.5,1.0")]
    epsilons: Vec<f64>,

    /// Multiply a_n by n^{-shift} before checking.
    #[arg(long)]
    shift: Option<f64>,

    #[command(flatten)]
    optimizer: OptimizerArgs,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // A second build_global is impossible here (flag handled once,
        // before any pool use), so failures are real configuration errors.
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: could not configure {threads} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen(args) => {
            run_gen(&GenConfig {
                family: args.family.spec()?,
                n: args.n,
                out: args.out,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Abscissa(args) => {
            let input = match (&args.family, &args.input) {
                (Some(name), None) => {
                    let mut spec = FamilySpec::new(FamilyName::parse(name)?);
                    spec.alpha = args.alpha;
                    spec.seed = args.seed;
                    spec.force_minus = args.force_minus;
                    SeriesInput::Family(spec)
                }
                (None, Some(path)) => SeriesInput::File(path.clone()),
                _ => {
                    return Err(Error::Invalid {
                        what: "series input",
                        detail: "give exactly one of --family or --input".into(),
                    })
                }
            };
            let report = run_abscissa(&AbscissaRunConfig {
                input,
                n: args.n,
                which: WhichAbscissas::parse(&args.which)?,
                shift: args.shift,
                optimizer: args.optimizer.config(),
                trail_prefix: args.trails,
            })?;
            emit(&report, args.report.as_deref())
        }
        Command::Thm1Sweep(args) => {
            let report = run_thm1_sweep(&SweepConfig {
                alphas: args.alphas,
                n: args.n,
                tolerance: args.tolerance,
            })?;
            emit(&report, args.report.as_deref())
        }
        Command::WintnerMc(args) => {
            let report = run_wintner_mc(&WintnerMcConfig {
                trials: args.trials,
                n: args.n,
                seed: args.seed,
                force_minus: args.force_minus,
            })?;
            emit(&report, args.report.as_deref())
        }
        Command::BohrCheck(args) => {
            let report = run_bohr_check(&BohrCampaignConfig {
                count: args.count,
                degree: args.degree,
                radii: args.radii,
                seed: args.seed,
            })?;
            emit(&report, args.report.as_deref())
        }
        Command::Thm2Check(args) => {
            let report = run_thm2_check(&ChainRunConfig {
                family: args.family.spec()?,
                n: args.n,
                epsilons: args.epsilons,
                shift: args.shift,
                optimizer: args.optimizer.config(),
            })?;
            emit(&report, args.report.as_deref())
        }
    }
}

/// Write the report to `--report` or stdout; turn its verdict into the
/// exit status (no verdict counts as success).
fn emit(report: &ExperimentReport, path: Option<&std::path::Path>) -> Result<ExitCode> {
    let text = report.render();
    match path {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(match report.pass {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}
