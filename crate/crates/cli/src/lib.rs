//! Command-line bench: JSON configuration in, CSV tables and a JSON
//! summary out.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::RunConfig;
pub use error::{CliError, CliResult};
pub use output::ResultBundle;

#[derive(Debug, Parser)]
#[command(
    name = "semidirac",
    version,
    about = "Half-space semi-Dirac spectral solver and verification bench"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the configured operator.
    Spectrum(RunArgs),
    /// Quadrature checks of the trial-function constructions.
    Quasimode(RunArgs),
    /// Parameter sweep against analytic predictions.
    Scan(RunArgs),
    /// One-dimensional fiber spectra across momenta.
    Fiber(RunArgs),
    /// Dump the assembled matrix in coordinate text format.
    ExportMatrix(RunArgs),
    /// Parse and validate the configuration, printing its canonical form.
    ValidateConfig(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory [default: the config's output.directory, else ./out].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads [default: hardware count].
    #[arg(long)]
    pub threads: Option<usize>,
    /// Seed for randomized starting vectors; overrides solver.seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Command {
    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Spectrum(a)
            | Command::Quasimode(a)
            | Command::Scan(a)
            | Command::Fiber(a)
            | Command::ExportMatrix(a)
            | Command::ValidateConfig(a) => a,
        }
    }
}

/// Runs one subcommand to completion and returns its bundle; `None` for
/// `validate-config`, which prints the canonical configuration instead.
pub fn run(cmd: &Command) -> CliResult<Option<ResultBundle>> {
    let args = cmd.args();
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(CliError::Config("--threads: must be at least 1".into()));
        }
        // A pool configured earlier in the process stays in place.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut cfg = RunConfig::load(&args.config)?;
    if let Command::ValidateConfig(_) = cmd {
        println!("{}", cfg.canonical());
        return Ok(None);
    }
    cfg.solver.seed = args.seed;
    let out = args
        .out
        .clone()
        .or_else(|| cfg.output.directory.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let result = match cmd {
        Command::Spectrum(_) => commands::spectrum(&cfg, args.seed),
        Command::Quasimode(_) => commands::quasimode(&cfg, args.seed),
        Command::Scan(_) => commands::scan(&cfg, args.seed, &out),
        Command::Fiber(_) => commands::fiber(&cfg, args.seed),
        Command::ExportMatrix(_) => commands::export_matrix(&cfg, args.seed, &out),
        Command::ValidateConfig(_) => unreachable!(),
    };
    let bundle = match result {
        Ok(b) => b,
        Err(CliError::Core(e)) if e.is_solver_failure() => {
            output::write_diagnostics(&out, &cfg, &e)?;
            return Err(e.into());
        }
        Err(e) => return Err(e),
    };
    bundle.write(&out)?;
    Ok(Some(bundle))
}
