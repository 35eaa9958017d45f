use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pcert_cli::{cmd_check, cmd_export, cmd_roundtrip, cmd_translate};
use pcert_core::Fuel;

/// Checker for PVS-Cert developments and their encoding in the
/// λΠ-calculus modulo rewriting.
///
/// Exit codes: 0 ok, 1 type error, 2 parse error or wrong mode,
/// 3 fuel exhausted, 4 protected symbol used, 5 round-trip failure.
#[derive(Parser)]
#[command(name = "pcert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct FuelArg {
    /// Rewrite steps allowed per declaration; 0 means unlimited and may
    /// not terminate.
    #[arg(long, env = "PCERT_FUEL", default_value_t = Fuel::DEFAULT)]
    fuel: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check a file in the mode given by its #MODE header.
    Check {
        file: PathBuf,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Translate a pcert file into an lf file.
    Translate {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Translate and invert every definition of a pcert file.
    Roundtrip {
        file: PathBuf,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Write Lambdapi source for a file.
    Export {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Include the encoding signature and its rewrite rules.
        #[arg(long)]
        signature: bool,
        #[command(flatten)]
        fuel: FuelArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let err = &mut io::stderr();
    let status = match cli.command {
        Command::Check { file, fuel } => cmd_check(&file, Fuel::from_limit(fuel.fuel), err),
        Command::Translate { file, output, fuel } => {
            cmd_translate(&file, &output, Fuel::from_limit(fuel.fuel), err)
        }
        Command::Roundtrip { file, fuel } => cmd_roundtrip(&file, Fuel::from_limit(fuel.fuel), err),
        Command::Export {
            file,
            output,
            signature,
            fuel,
        } => cmd_export(&file, &output, signature, Fuel::from_limit(fuel.fuel), err),
    };
    ExitCode::from(status.code() as u8)
}
