//! Command-line harness: configuration files, canonical reports, OFF
//! export and the command dispatcher.

pub mod config;
pub mod off;
pub mod report;
pub mod run;

pub use config::{parse_config, serialize_config, ConfigError};
pub use report::Envelope;
pub use run::{run_command, Outcome, THREADS_ENV};
