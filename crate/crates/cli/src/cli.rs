//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::ModeConfig;
use crate::error::CliResult;
use crate::run::{parse_values, run_scenario, run_sweep, validate, LoadedConfig};
use crate::scenario::Overrides;

#[derive(Debug, Parser)]
#[command(name = "qoe", version, about = "System QoE rating distributions from QoS distributions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the QoE distribution and metrics of a scenario.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Repeat a scenario over a grid of values of one numeric field.
    Sweep {
        config: PathBuf,
        /// Dotted path of the field, e.g. `qos.lognormal.std`.
        #[arg(long)]
        param: String,
        /// Comma list (`2,4,8`) or inclusive range (`1:10[:step]`).
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check a scenario and its input files without computing.
    Validate {
        config: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Rescale histogram inputs whose mass is not 1.
    #[arg(long)]
    pub normalize: bool,
    /// Output directory; defaults to $QOE_OUTPUT_DIR.
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Discrete,
    Continuous,
    Both,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            normalize: self.normalize,
            mode: self.mode.map(|m| match m {
                Mode::Discrete => ModeConfig::Discrete,
                Mode::Continuous => ModeConfig::Continuous,
                Mode::Both => ModeConfig::Both,
            }),
            tolerance: self.tolerance,
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<String> {
    let written = |paths: Vec<PathBuf>| {
        let files: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
        serde_json::json!({ "status": "ok", "outputs": files }).to_string()
    };
    match cli.command {
        Command::Run { config, common } => {
            let cfg = LoadedConfig::read(&config)?;
            run_scenario(&cfg, &common.overrides(), common.output_dir.as_deref()).map(written)
        }
        Command::Sweep {
            config,
            param,
            values,
            common,
        } => {
            let values = parse_values(&values)?;
            let cfg = LoadedConfig::read(&config)?;
            run_sweep(&cfg, &param, &values, &common.overrides(), common.output_dir.as_deref())
                .map(written)
        }
        Command::Validate { config, common } => {
            let cfg = LoadedConfig::read(&config)?;
            validate(&cfg, &common.overrides()).map(|v| v.to_string())
        }
    }
}

/// Runs the CLI and returns the process exit code. Errors are printed to
/// stderr as one JSON record.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
