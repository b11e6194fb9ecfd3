//! JSON documents and subcommands for the `sparsemult` command-line tool.
//!
//! Every subcommand reads an [`InputDocument`] and produces an [`OutputDocument`];
//! failures are reported inside the document together with the process exit status.

pub mod commands;
pub mod document;
pub mod error;
pub mod table;

pub use commands::{cmd_census, cmd_check, cmd_mult0, cmd_verify, run, Command};
pub use document::{InputDocument, Options, OutputDocument};
pub use error::{exit, CliError};
