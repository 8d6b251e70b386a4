use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses, one per failure class.
pub mod exit {
    pub const OK: i32 = 0;
    /// A mathematical check reported by the command failed.
    pub const CHECK_FAILED: i32 = 1;
    /// Command-line usage error.
    pub const USAGE: i32 = 2;
    /// The document is malformed or has dangling references.
    pub const DOCUMENT: i32 = 3;
    /// An object in the document fails its validator.
    pub const VALIDATION: i32 = 4;
    /// The computation was rejected by the engine (unmet precondition).
    pub const ENGINE: i32 = 5;
    /// The input or output file could not be accessed.
    pub const IO: i32 = 6;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    Schema,
    Reference,
    Validation,
}

/// A problem located in the input document. `path` is a JSON pointer for
/// semantic problems and `line:column` for syntax errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = if self.path.is_empty() {
            "/"
        } else {
            &self.path
        };
        write!(f, "{}: {}", path, self.message)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}", render_diagnostics(.0))]
    Document(Vec<Diagnostic>),

    #[error(transparent)]
    Engine(#[from] modind_core::Error),

    #[error("{0}")]
    Usage(String),
}

fn render_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Document(diags) => {
                if diags.iter().all(|d| d.kind == DiagnosticKind::Validation) {
                    exit::VALIDATION
                } else {
                    exit::DOCUMENT
                }
            }
            CliError::Engine(_) => exit::ENGINE,
            CliError::Usage(_) => exit::USAGE,
        }
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            CliError::Document(d) => d,
            _ => &[],
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
