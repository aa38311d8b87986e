//! File formats, sweeps and a decimal brute-force oracle around
//! `threegap-core`, plus the `threegap` command line.

pub mod app;
pub mod error;
pub mod float_oracle;
pub mod format;
pub mod random;
pub mod sweep;

pub use error::{CliError, Result};
