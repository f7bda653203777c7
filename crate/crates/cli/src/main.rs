use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use adaptecc_cli::{cmd_ber, cmd_compare, cmd_dcr, cmd_gain, cmd_simulate, load_config, Flags};

/// Adaptive error-control coding: BER sweeps, coding gains, critical
/// distances and sensor-field simulation.
#[derive(Parser)]
#[command(name = "adaptecc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Configuration file (`key = value` lines); defaults apply when omitted
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Overrides the configured seed
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Output directory, created if missing
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo BER curves for the uncoded and coded chains
    Ber(Common),
    /// Coding gain of each codec at the target BER
    Gain(Common),
    /// Critical distance of each codec
    Dcr(Common),
    /// Round-by-round field simulation for every scheme
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Also write every per-node record to detail.csv
        #[arg(long)]
        detail: bool,
    },
    /// Rank schemes by final net saving
    Compare(Common),
}

fn flags(c: Common) -> Flags {
    Flags {
        config: c.config,
        seed: c.seed,
        out: c.out,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let (common, detail) = match &cli.command {
        Command::Ber(c) | Command::Gain(c) | Command::Dcr(c) | Command::Compare(c) => (c.clone(), false),
        Command::Simulate { common, detail } => (common.clone(), *detail),
    };
    let flags = flags(common);
    let cfg = load_config(&flags)?;
    let written = match cli.command {
        Command::Ber(_) => cmd_ber(&cfg, &flags.out)?,
        Command::Gain(_) => cmd_gain(&cfg, &flags.out)?,
        Command::Dcr(_) => cmd_dcr(&cfg, &flags.out)?,
        Command::Simulate { .. } => cmd_simulate(&cfg, &flags.out, detail)?,
        Command::Compare(_) => {
            let (written, table) = cmd_compare(&cfg, &flags.out)?;
            print!("{table}");
            written
        }
    };
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("adaptecc: {e:#}");
            ExitCode::FAILURE
        }
    }
}
