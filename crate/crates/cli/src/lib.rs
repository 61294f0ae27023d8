//! Command-line front end: instance files, element expressions, subcommands
//! and text or JSON reports.
//!
//! Exit codes: 0 success, 1 hypothesis violation, 2 parse error, 3 math or
//! domain error, 4 budget exceeded.

pub mod commands;
pub mod config;
pub mod error;
pub mod expr;

pub use error::CliError;
