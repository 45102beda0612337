//! Command-line front end for `stone-groupoid` and its JSON interchange
//! format.
//!
//! [`run`] executes one command line against explicit streams, so the binary
//! and the tests share a single entry point.

pub mod commands;
pub mod document;
pub mod error;
pub mod validate;

pub use commands::{run, run_with_bound, Cli, Command, ORACLE_BOUND_VAR};
pub use document::{Document, FORMAT_VERSION};
pub use error::CliError;
