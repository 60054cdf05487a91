//! File formats, parallel drivers and the command-line front end for
//! `ncluster-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;

pub use error::CliError;
