//! Session files, subcommands and the built-in example suites behind the `hypersurf` binary.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

pub use commands::{CommandError, Options, Outcome, Property};
pub use config::{parse_config, parse_config_str, ConfigError, SessionConfig};
pub use report::Report;
