//! Batch front end for `qfi-core`: configuration files, commands, sweeps and
//! CSV output.

pub mod config;
pub mod output;
pub mod run;

pub use config::{parse_config, parse_config_with, Command, ConfigError, RunConfig};
pub use output::{write_csv, Row, HEADER};
pub use run::{default_run_id, execute, Outcome};
