//! Document format, subcommands and report rendering for `modind`.
//!
//! A workspace document names fields, Lie algebras, subalgebras, `f`-families,
//! modules and envelopes; see [`document`] for the format and [`expr`] for the
//! element expression grammar. The functions in [`commands`] run one
//! subcommand each and return a [`commands::Report`].

pub mod commands;
pub mod document;
mod error;
pub mod expr;
pub mod render;

pub use commands::{Flags, Report, REPORT_SCHEMA};
pub use document::{parse_file, parse_str, Options, Workspace, SCHEMA};
pub use error::{exit, CliError, Diagnostic, DiagnosticKind, Result};
