//! `ctxlab`: verification lab for two-qubit contextuality.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
//! configuration error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ctxlab::config::{
    CommandKind, DataInputs, EnsembleChoice, InitialState, OutputFormat, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "ctxlab",
    version,
    about = "Peres-Mermin square contextuality verification lab"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the six line operator identities, all within-line
    /// compatibilities, and the brute-force classical bounds.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep random states and check <chi> = 6 and <gamma> = 3 for each.
    Scan {
        #[command(flatten)]
        common: CommonArgs,
        /// States to sample per ensemble.
        #[arg(long, default_value_t = 1000)]
        num_states: u64,
        /// Which random-state ensemble to sweep.
        #[arg(long, value_enum, default_value_t = EnsembleArg::Both)]
        ensemble: EnsembleArg,
    },
    /// Run both measurement setups shot by shot and test the gamma
    /// violation.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Shots per setup.
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        /// Probability of flipping each recorded outcome, in [0, 0.5].
        #[arg(long = "flip-prob", default_value_t = 0.0)]
        flip_prob: f64,
        /// Initial state: the singlet or a seeded random mixed state.
        #[arg(long, value_enum, default_value_t = StateArg::Singlet)]
        state: StateArg,
        /// Violation threshold in units of sigma.
        #[arg(long = "threshold-sigma", default_value_t = 5.0)]
        threshold_sigma: f64,
    },
    /// Evaluate gamma from externally measured line products.
    ReportFromData {
        #[command(flatten)]
        common: CommonArgs,
        /// Measured <R3 product>.
        #[arg(long, allow_hyphen_values = true)]
        r3: f64,
        /// Standard error of --r3.
        #[arg(long = "r3-err", allow_hyphen_values = true)]
        r3_err: f64,
        /// Measured <C3 product>.
        #[arg(long, allow_hyphen_values = true)]
        c3: f64,
        /// Standard error of --c3.
        #[arg(long = "c3-err", allow_hyphen_values = true)]
        c3_err: f64,
        /// Violation threshold in units of sigma.
        #[arg(long = "threshold-sigma", default_value_t = 5.0)]
        threshold_sigma: f64,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Base random seed; CTXLAB_SEED is used when the flag is absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the command's default check tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Include a wall-clock timestamp in the report (breaks byte-for-byte
    /// reproducibility between runs).
    #[arg(long)]
    timestamps: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleArg {
    #[value(name = "haar_pure")]
    HaarPure,
    #[value(name = "ginibre_mixed")]
    GinibreMixed,
    #[value(name = "both")]
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateArg {
    Singlet,
    Random,
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("CTXLAB_SEED") {
        Ok(value) => value
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("CTXLAB_SEED is not a valid u64: {value:?}")),
        Err(_) => Ok(42),
    }
}

fn build_config(cli: &Command) -> Result<RunConfig, String> {
    let (kind, common) = match cli {
        Command::Verify { common } => (CommandKind::Verify, common),
        Command::Scan { common, .. } => (CommandKind::Scan, common),
        Command::Simulate { common, .. } => (CommandKind::Simulate, common),
        Command::ReportFromData { common, .. } => (CommandKind::ReportFromData, common),
    };
    let mut config = RunConfig::defaults(kind);
    config.seed = resolve_seed(common.seed)?;
    config.output_format = match common.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Csv => OutputFormat::Csv,
    };
    config.tolerance = common.tol;
    config.timestamps = common.timestamps;

    match *cli {
        Command::Verify { .. } => {}
        Command::Scan {
            num_states,
            ensemble,
            ..
        } => {
            config.num_states = num_states;
            config.ensemble = match ensemble {
                EnsembleArg::HaarPure => EnsembleChoice::HaarPure,
                EnsembleArg::GinibreMixed => EnsembleChoice::GinibreMixed,
                EnsembleArg::Both => EnsembleChoice::Both,
            };
        }
        Command::Simulate {
            shots,
            flip_prob,
            state,
            threshold_sigma,
            ..
        } => {
            config.shots = shots;
            config.flip_probability = flip_prob;
            config.initial_state = match state {
                StateArg::Singlet => InitialState::Singlet,
                StateArg::Random => InitialState::Random,
            };
            config.threshold_sigma = threshold_sigma;
        }
        Command::ReportFromData {
            r3,
            r3_err,
            c3,
            c3_err,
            threshold_sigma,
            ..
        } => {
            config.data = Some(DataInputs {
                r3_mean: r3,
                r3_err,
                c3_mean: c3,
                c3_err,
            });
            config.threshold_sigma = threshold_sigma;
        }
    }
    config.validate()?;
    Ok(config)
}

fn emit(rendered: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Verify { common }
        | Command::Scan { common, .. }
        | Command::Simulate { common, .. }
        | Command::ReportFromData { common, .. } => common.out.clone(),
    };
    let config = match build_config(&cli.command) {
        Ok(config) => config,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };

    let report = ctxlab::commands::run(&config);
    if let Err(err) = emit(&report.render(), out.as_ref()) {
        eprintln!("error: failed to write report: {err}");
        return ExitCode::from(2);
    }

    if report.passed {
        ExitCode::SUCCESS
    } else {
        for check in report.checks.iter().filter(|c| !c.pass) {
            eprintln!(
                "check failed: {} (expected {}, observed {})",
                check.name, check.expected, check.observed
            );
        }
        ExitCode::from(1)
    }
}
