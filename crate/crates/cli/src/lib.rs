//! Batch front end of the laboratory: one TOML file describes a run, the
//! outputs land in a directory and carry the hash of that file.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::run;
pub use config::{config_hash, Command, Format, LoadedConfig, RunConfig, Target};
pub use error::{LabError, Result};
