//! `kirkwood-lab`: command-line front end for the `kirkwood` crate.
//!
//! Every successful run writes its data files and a `manifest.json` with the
//! resolved configuration and SHA-256 checksums into the output directory.
//! Exit codes: 0 success or admissible, 2 usage, 3 inadmissible verdict,
//! 4 numerical error, 5 I/O error. Errors are reported on standard error as
//! a JSON object `{code, message, context}`.

#![forbid(unsafe_code)]

pub mod commands;
pub mod config;
pub mod error;
pub mod inputs;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use config::{OutputFormat, Overrides, RunConfig, CONFIG_ENV};
use error::{CliError, CliResult, EXIT_OK};
use output::Artifacts;

#[derive(Debug, Parser)]
#[command(
    name = "kirkwood-lab",
    version,
    about = "Kirkwood distributions, weak values and plausibility audits"
)]
pub struct Cli {
    /// Output directory (created if missing)
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Data file encoding; JSON summaries are always written
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Seed for every random draw in the run
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Kirkwood table of a density matrix in two bases, with marginals
    Kirkwood(TableArgs),
    /// Audit one or more curves (joined end to end) for a plausibility ranking
    Audit(AuditArgs),
    /// Angular conditional density between two angular-momentum states
    Oam(OamArgs),
    /// Reconstruct a density matrix from its Kirkwood table
    Tomo(TableArgs),
    /// Infer a weak value from simulated qubit-meter statistics
    Weaksim(WeaksimArgs),
    /// Classical Bayes update
    Bayes(BayesArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Kirkwood(_) => "kirkwood",
            Command::Audit(_) => "audit",
            Command::Oam(_) => "oam",
            Command::Tomo(_) => "tomo",
            Command::Weaksim(_) => "weaksim",
            Command::Bayes(_) => "bayes",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    /// Density matrix JSON file
    #[arg(long)]
    pub rho: PathBuf,
    /// computational, fourier, hadamard, or a basis JSON file
    #[arg(long, value_name = "NAME|FILE")]
    pub basis_a: String,
    /// computational, fourier, hadamard, or a basis JSON file
    #[arg(long, value_name = "NAME|FILE")]
    pub basis_b: String,
}

#[derive(Debug, Args, Serialize)]
pub struct AuditArgs {
    /// Curve JSON files, joined in the order given
    #[arg(long, required = true, num_args = 1..)]
    pub curve: Vec<PathBuf>,
    /// Plausibility of falsity
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub vf: f64,
    /// Plausibility of truth
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub vt: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct OamArgs {
    /// Number of angle samples
    #[arg(long)]
    pub dim: usize,
    /// Angular momentum of the preselected state
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    /// Angular momentum of the dominant postselected component
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    /// Weight of |m⟩ in the postselected state
    #[arg(long, required_unless_present = "sweep_delta")]
    pub delta: Option<f64>,
    /// Comma-separated list of δ values to run instead of --delta
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub sweep_delta: Option<Vec<f64>>,
}

#[derive(Debug, Args, Serialize)]
pub struct WeaksimArgs {
    /// Preselected state JSON file
    #[arg(long)]
    pub pre: PathBuf,
    /// Postselected state JSON file
    #[arg(long)]
    pub post: PathBuf,
    /// Observable JSON file
    #[arg(long)]
    pub obs: PathBuf,
    /// Coupling strength
    #[arg(long, required_unless_present = "sweep_g")]
    pub g: Option<f64>,
    /// Simulated meter readouts; exact expectations if omitted
    #[arg(long)]
    pub shots: Option<u64>,
    /// Comma-separated, strictly decreasing couplings
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub sweep_g: Option<Vec<f64>>,
}

#[derive(Debug, Args, Serialize)]
pub struct BayesArgs {
    /// Comma-separated prior probabilities
    #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
    pub prior: Vec<f64>,
    /// Comma-separated likelihoods P(evidence | hypothesis)
    #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
    pub likelihood: Vec<f64>,
}

fn report(err: &CliError, subcommand: Option<&str>) -> u8 {
    eprintln!("{}", err.to_json(subcommand));
    err.code()
}

fn execute(cli: Cli) -> CliResult<u8> {
    let config = RunConfig::resolve(
        std::env::var_os(CONFIG_ENV).map(PathBuf::from),
        Overrides {
            out_dir: cli.out,
            format: cli.format,
            seed: cli.seed,
        },
    )?;
    let mut out = Artifacts::create(&config.out_dir)?;
    let code = commands::dispatch(&cli.command, &config, &mut out)?;
    let arguments = serde_json::to_value(&cli.command).expect("arguments serialize");
    out.finish(cli.command.name(), arguments, &config)?;
    Ok(code)
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let message = e.kind().to_string();
            eprint!("{}", e.render());
            return report(&CliError::Usage(message), None);
        }
    };
    let name = cli.command.name();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => report(&e, Some(name)),
    }
}
