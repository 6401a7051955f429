use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperpart::commands::{self, Outcome, Overrides};
use hyperpart::config::{PrecisionSpec, RunConfig};
use hyperpart::output::write_atomic;
use hyperpart::{exit, CliError};

/// Sector partitions, translated disk families and universal polynomial fits.
///
/// Exit status: 0 pass, 1 I/O error, 2 invalid input, 3 verification
/// failed, 4 numerical failure.
#[derive(Parser)]
#[command(name = "hyperpart", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List a prefix of the configured sequence with its block structure.
    GenSequence(Args),
    /// Check partition invariants and disk disjointness over the truncation.
    VerifyGeometry(Args),
    /// Locate quasi-random sector points and report covering defects.
    VerifyCovering(Args),
    /// Fit one polynomial over the disks of a sub-sector and check membership.
    BuildUniversal(Args),
    /// Render the points and disks of the SVG window.
    ExportSvg(Args),
    /// Write the truncated partition as JSON lines.
    ExportPartition(Args),
    /// Write the translated disks of the truncation as JSON lines.
    ExportDisks(Args),
}

#[derive(clap::Args)]
struct Args {
    #[arg(long)]
    config: PathBuf,
    /// Primary output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sample count: covering samples, pairwise samples, prefix length or samples per disk.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_enum)]
    precision: Option<PrecisionSpec>,
}

type Handler = fn(&RunConfig, Overrides) -> Result<Outcome, CliError>;

fn run(cli: Cli) -> Result<bool, CliError> {
    let (args, cmd): (&Args, Handler) = match &cli.command {
        Command::GenSequence(a) => (a, commands::gen_sequence),
        Command::VerifyGeometry(a) => (a, commands::verify_geometry),
        Command::VerifyCovering(a) => (a, commands::verify_covering),
        Command::BuildUniversal(a) => (a, commands::build_universal_cmd),
        Command::ExportSvg(a) => (a, commands::export_svg),
        Command::ExportPartition(a) => (a, commands::export_partition),
        Command::ExportDisks(a) => (a, commands::export_disks),
    };
    let config = RunConfig::load(&args.config)?;
    let overrides = Overrides {
        seed: args.seed,
        samples: args.samples,
        degree: args.degree,
        precision: args.precision,
    };
    let outcome = cmd(&config, overrides)?;
    match &args.out {
        Some(path) => write_atomic(path, &outcome.primary)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&outcome.primary)
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
        }
    }
    eprintln!("{}", outcome.summary);
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(true) => exit::PASS,
        Ok(false) => exit::VERIFICATION_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
