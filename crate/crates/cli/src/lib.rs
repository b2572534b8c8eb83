//! Command-line front end: argument parsing, resolved run configuration,
//! per-command drivers and the built-in oracle checks.

pub mod commands;
pub mod config;
pub mod error;
pub mod selftest;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
