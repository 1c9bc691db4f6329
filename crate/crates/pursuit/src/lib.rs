//! File formats, JSON reports, solution caching and the command-line driver
//! around `pursuit-core`.

pub mod cache;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod pace;
pub mod report;
pub mod trace;

pub use error::{CliError, FormatError};
