//! Command-line front end for `hyperwave-core`.

pub mod args;
pub mod output;
mod run;

pub use args::{Cli, Command, Format, Quantity};
pub use run::{run, CliError, Status};
