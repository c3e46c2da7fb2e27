//! Command implementations behind the `juddian` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod svg;

pub use error::CliError;
