//! Command-line front end: argument parsing, subcommand dispatch, and the
//! SVG/CSV rendering used by `plot`.

pub mod commands;
pub mod plot;

pub use commands::{exit_for, run, Cli, Exit};
