use std::path::PathBuf;

use anyhow::{Context, Result};
use central_spin_cli::{presets, run_to_csv, ExperimentConfig};
use clap::{Parser, Subcommand};

/// Exact dynamics of central qubits coupled to a symmetric spin bath.
#[derive(Parser)]
#[command(name = "csm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON file.
    Run {
        config: PathBuf,
        /// Write the CSV here instead of the config's `output` (or stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named preset.
    Preset {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the preset names.
    ListPresets,
    /// Print a preset's configuration as JSON.
    ShowPreset { name: String },
}

fn emit(config: &ExperimentConfig, out: Option<PathBuf>) -> Result<()> {
    let csv = run_to_csv(config)?;
    match out.or_else(|| config.output.clone()) {
        Some(path) => std::fs::write(&path, csv).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run { config, out } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let cfg = ExperimentConfig::from_json(&text).with_context(|| format!("in {}", config.display()))?;
            emit(&cfg, out)
        }
        Command::Preset { name, out } => emit(&presets::preset(&name)?, out),
        Command::ListPresets => {
            for name in presets::list_presets() {
                println!("{name}");
            }
            Ok(())
        }
        Command::ShowPreset { name } => {
            println!("{}", presets::preset(&name)?.to_json());
            Ok(())
        }
    }
}
