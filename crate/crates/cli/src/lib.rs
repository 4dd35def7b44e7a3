//! File formats, benchmarks and the `agq` command line for `agq-core`.

pub mod bench;
pub mod bessel;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod measure;

pub use error::{CliError, Result};
