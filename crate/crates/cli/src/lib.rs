//! Command-line front end for `petz-core`: state files, divergence curves
//! as CSV, the built-in examples and the property suite.

pub mod args;
pub mod commands;
pub mod curve;
pub mod error;
pub mod state_file;

pub use args::Cli;
pub use commands::run;
pub use error::{CliError, Result};
