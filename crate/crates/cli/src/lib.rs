//! Scenario-driven front end for `qoe-core`.
//!
//! A scenario is a TOML file naming a rating scale, a conditional rating
//! model, an optional MOS mapping, a QoS distribution and output options.
//! Input data (histograms, samples, ratings, tables) are CSV files with a
//! header row, resolved relative to the scenario file.

pub mod cli;
pub mod config;
pub mod error;
pub mod input;
pub mod output;
pub mod run;
pub mod scenario;

pub use cli::main_with_args;
pub use error::{CliError, CliResult};

pub const TOOL_NAME: &str = "qoe";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
