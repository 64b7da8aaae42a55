//! File formats, IO and command implementations for the `gammahodge` tool.

pub mod commands;
pub mod error;
pub mod formats;
pub mod io;

pub use error::CliError;
