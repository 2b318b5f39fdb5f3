use std::path::PathBuf;

use qoe_core::QoeError;
use serde::Serialize;
use thiserror::Error;

/// Failures of a CLI invocation, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// The scenario does not match the schema or holds invalid values.
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },

    /// An input file is missing, malformed or inconsistent.
    #[error("{}: {message}", path.display())]
    Data { path: PathBuf, message: String },

    /// Numerical failure while computing.
    #[error("{0}")]
    Numerical(String),

    #[error("cannot write {}: {message}", path.display())]
    Output { path: PathBuf, message: String },
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    kind: &'static str,
    exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pointer: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
    message: String,
}

impl CliError {
    pub fn schema(pointer: impl Into<String>, message: impl ToString) -> Self {
        CliError::Schema {
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }

    pub fn data(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Data {
            path: path.into(),
            message: message.to_string(),
        }
    }

    /// Classifies a failure of the numerical core. Numerical problems get
    /// their own exit code, anything else is blamed on the data.
    pub fn from_core(err: QoeError, data_path: impl Into<PathBuf>) -> Self {
        if err.is_numerical() {
            CliError::Numerical(err.to_string())
        } else {
            CliError::data(data_path, err)
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } => 2,
            CliError::Data { .. } | CliError::Output { .. } => 3,
            CliError::Numerical(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Schema { .. } => "schema",
            CliError::Data { .. } => "data",
            CliError::Numerical(_) => "numerical",
            CliError::Output { .. } => "output",
        }
    }

    /// One-line JSON record for stderr.
    pub fn to_json(&self) -> String {
        let (pointer, path, message) = match self {
            CliError::Schema { pointer, message } => (Some(pointer.as_str()), None, message.clone()),
            CliError::Data { path, message } | CliError::Output { path, message } => {
                (None, Some(path.display().to_string()), message.clone())
            }
            CliError::Numerical(message) => (None, None, message.clone()),
        };
        let record = ErrorRecord {
            kind: self.kind(),
            exit_code: self.exit_code(),
            pointer,
            path,
            message,
        };
        serde_json::json!({ "error": record }).to_string()
    }
}

pub type CliResult<T> = Result<T, CliError>;
