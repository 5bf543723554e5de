//! Command-line front end: configuration, execution and report output.

pub mod cli;
pub mod config;
pub mod emit;
pub mod records;
pub mod runner;

pub use config::{Format, Kinds, Overrides, RunConfig, UsageError};
pub use records::{RunReport, Status, Summary};
pub use runner::run;
