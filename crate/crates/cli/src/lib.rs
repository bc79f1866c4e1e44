//! Manifest parsing, batch verification and report emission for the
//! `stoneworks` command line tool.
//!
//! A manifest names the structures to work on (lattices, spaces, tensor
//! systems, support data and group actions); [`run`] executes the requested
//! commands over every structure they apply to and collects a deterministic
//! [`Report`].

pub mod corpus;
pub mod emit;
pub mod manifest;
pub mod run;

pub use emit::{emit_dot, emit_table1};
pub use manifest::{parse, parse_str, Entry, Manifest, Structure, SupportDatum};
pub use run::{run, Command, Options, Outcome, Record, Report};

use thiserror::Error;

/// Errors raised while reading a manifest. All of them map to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{line}: unknown {what} `{name}`")]
    Reference { line: usize, what: String, name: String },
    #[error("{line}: `{name}` is invalid: {source}")]
    Invalid {
        line: usize,
        name: String,
        source: stoneworks_core::Error,
    },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}
