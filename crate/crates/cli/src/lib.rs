//! Batch front end for `wallspace-core`: a rayon executor, the verification
//! suites behind each subcommand, and JSON/CSV reports.
//!
//! Reports are pure functions of the configuration. Wall-clock time goes to
//! the diagnostic stream unless `--embed-duration` is given.

pub mod cli;
pub mod config;
pub mod exec;
pub mod report;
pub mod suites;

pub use cli::{execute, run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
pub use config::{Command, Format, MethodChoice, RunConfig};
pub use exec::Rayon;
pub use report::{Report, Row, Summary};
