//! Library surface of the `ctxlab` command-line tool.
//!
//! The binary is a thin wrapper over [`commands`]; tests drive the same
//! functions directly and only go through the binary for exit-code and
//! serialization contracts.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{cmd_report_from_data, cmd_scan, cmd_simulate, cmd_verify, cmd_verify_on, run};
pub use config::{CommandKind, DataInputs, EnsembleChoice, InitialState, OutputFormat, RunConfig};
pub use report::{Check, RunReport, SCHEMA_VERSION};
