use clap::{Parser, Subcommand};
use phsep::commands::{
    cmd_gen, cmd_h0, cmd_separability, cmd_toy, cmd_track, GenArgs, H0Args, SeparabilityArgs,
    ToyArgs, TrackArgs,
};
use phsep::config::FileConfig;
use phsep::errors::exit_code;
use std::path::PathBuf;
use std::process::ExitCode;

/// Estimate class separability of embedding snapshots from the distribution
/// of H0 persistence times, and compare against baseline metrics.
#[derive(Parser)]
#[command(name = "phsep", version)]
struct Cli {
    /// Optional key=value config file (keys: t, k, splits, bins, delta,
    /// window).  Flags override the file; the file overrides defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    Gen(GenArgs),
    H0(H0Args),
    #[command(alias = "sep")]
    Separability(SeparabilityArgs),
    Track(TrackArgs),
    Toy(ToyArgs),
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let file_cfg = FileConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::H0(args) => cmd_h0(args, &file_cfg),
        Command::Separability(args) => cmd_separability(args, &file_cfg),
        Command::Track(args) => cmd_track(args, &file_cfg),
        Command::Toy(args) => cmd_toy(args, &file_cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
