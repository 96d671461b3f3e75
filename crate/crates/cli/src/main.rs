//! `phasespace`: phase-space fields, localisation measures and inequality
//! verification from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 numerical-validity error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use phasespace_cli::config::{Extent, Format, RunConfig};
use phasespace_cli::{commands, CliError};

#[derive(Parser)]
#[command(name = "phasespace", version, about = "Phase-space distributions, localisation measures and entropic-inequality verification for truncated Fock-basis states")]
struct Cli {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<String>,

    /// Fock cutoff n_max.
    #[arg(long, global = true)]
    cutoff: Option<usize>,

    /// Grid points per axis (even, >= 16).
    #[arg(long = "grid-N", global = true)]
    grid_n: Option<usize>,

    /// Grid half-extent, a number or "auto".
    #[arg(long = "grid-R", global = true)]
    grid_r: Option<String>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Output formats (comma separated): csv|bin|json|table.
    #[arg(long, global = true)]
    format: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one s-ordered phase-space function on a grid and export it.
    Grid {
        /// State descriptor, e.g. "vacuum", "fock:2", "coherent:0.7+0.2i".
        #[arg(long)]
        state: Option<String>,
        /// Ordering parameter s in [-1, 0] (0 = Wigner, -1 = Husimi).
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        order: f64,
    },
    /// Compute a localisation-measure report per state.
    Measures,
    /// Run the inequality battery; exit 0 iff every verdict passes.
    Verify,
    /// Measures + verify, bundled into one report.
    Report,
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(c) = cli.cutoff {
        config.cutoff = c;
    }
    if let Some(n) = cli.grid_n {
        config.grid.n = n;
    }
    if let Some(r) = &cli.grid_r {
        config.grid.r = Extent::parse(r)?;
    }
    if let Some(dir) = &cli.out {
        config.output.dir = dir.clone();
    }
    if let Some(formats) = &cli.format {
        config.output.formats = formats
            .split(',')
            .map(|f| Format::parse(f.trim()))
            .collect::<Result<Vec<_>, _>>()?;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let config = build_config(cli)?;
    match &cli.command {
        Command::Grid { state, order } => commands::cmd_grid(&config, state.as_deref(), *order),
        Command::Measures => commands::cmd_measures(&config),
        Command::Verify => commands::cmd_verify(&config),
        Command::Report => commands::cmd_report(&config),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
