use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fastlight_cli::commands::{cmd_fit, cmd_propagate, cmd_reproduce, cmd_sweep};
use fastlight_cli::{load_config, output_root, CliError, Report, OUTPUT_ROOT_ENV};

#[derive(Parser)]
#[command(name = "fastlight", version, about = "Fast and slow light in a birefringent fiber between polarizers")]
struct Cli {
    /// Scenario file (`key = value` lines); built-in defaults otherwise.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; overrides `output_dir` and $FASTLIGHT_SEED_DIR.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print a single machine-readable line.
    #[arg(long, global = true)]
    porcelain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Absorption, refraction and group index versus detuning.
    Sweep,
    /// Propagate the configured pulse through each post-selection.
    Propagate,
    /// Fit the weak value relating a reference and a measured signal file.
    Fit { reference: PathBuf, measured: PathBuf },
    /// Regenerate the data behind one of the reference figures.
    ReproduceFig {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        fig: u8,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let config = load_config(cli.config.as_deref())?;
    let out = || output_root(cli.out.clone(), &config, std::env::var(OUTPUT_ROOT_ENV).ok());
    match &cli.command {
        Command::Sweep => cmd_sweep(&config, &out()),
        Command::Propagate => cmd_propagate(&config, &out()),
        Command::Fit { reference, measured } => cmd_fit(&config, reference, measured),
        Command::ReproduceFig { fig } => cmd_reproduce(&config, *fig, &out()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.porcelain));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
