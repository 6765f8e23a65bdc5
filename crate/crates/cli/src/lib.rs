//! Library side of the `motorctl` command: config parsing, manifest
//! resolution and the subcommands, so they can be tested and fuzzed.

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;

pub use config::{Emit, Settings};
pub use error::CliError;
pub use manifest::{parse_config, Overrides, RunManifest};
