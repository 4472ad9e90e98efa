//! Command-line front end for `casimir-core`.

pub mod cli;
pub mod output;
pub mod units;

pub use cli::run;
