//! `corrset <command> --config <path> [--out <dir>] [--format csv|json] [--max-bits <n>]`

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Context;
use error::CliError;

#[derive(Parser)]
#[command(name = "corrset", version, about = "Sets of integers with prescribed correlations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, PartialEq, Eq)]
enum Command {
    /// Build the schedule and write the prefix and its manifest.
    Synthesize(Args),
    /// Compare empirical intersection densities with exact correlations.
    Verify(Args),
    /// Upper-density trajectory and Følner defects.
    Densities(Args),
    /// Recurrence, nice recurrence, transfer and R3 searches.
    Reclab(Args),
    /// Ergodic decomposition of the measure.
    Decompose(Args),
}

#[derive(clap::Args, Clone, PartialEq, Eq)]
struct Args {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value_t = 1 << 32)]
    max_bits: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Synthesize(_) => "synthesize",
            Command::Verify(_) => "verify",
            Command::Densities(_) => "densities",
            Command::Reclab(_) => "reclab",
            Command::Decompose(_) => "decompose",
        }
    }

    fn args(&self) -> &Args {
        match self {
            Command::Synthesize(a)
            | Command::Verify(a)
            | Command::Densities(a)
            | Command::Reclab(a)
            | Command::Decompose(a) => a,
        }
    }
}

fn run(cmd: &Command) -> Result<Vec<PathBuf>, CliError> {
    let args = cmd.args();
    let cfg = config::load(&args.config, cmd.name())?;
    let ctx = Context {
        out: args.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        format: args.format,
        max_bits: args.max_bits,
    };
    commands::ensure_dir(&ctx.out)?;
    match cmd {
        Command::Synthesize(_) => commands::synthesize(&cfg, &ctx),
        Command::Verify(_) => commands::verify(&cfg, &ctx),
        Command::Densities(_) => commands::densities(&cfg, &ctx),
        Command::Reclab(_) => commands::reclab(&cfg, &ctx),
        Command::Decompose(_) => commands::decompose(&cfg, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(paths) => {
            let files: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
            println!("{}", serde_json::json!({ "command": cli.command.name(), "written": files }));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e }));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
