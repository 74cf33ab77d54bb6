use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: parse error: {message}")]
    Parse { origin: String, line: usize, column: usize, message: String },
    #[error("{origin}: invalid `{field}`: {message}")]
    Validation { origin: String, field: String, message: String },
    #[error("{scenario}: {message} ({rows} rows written)")]
    Abort { scenario: String, rows: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// Stable process exit code.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Parse { .. } => 2,
            Self::Validation { .. } => 3,
            Self::Abort { .. } => 4,
            Self::Io { .. } => 5,
        }
    }

    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Validation { origin: String::new(), field: field.into(), message: message.into() }
    }

    pub(crate) fn with_origin(self, origin: &str) -> Self {
        match self {
            Self::Validation { origin: o, field, message } if o.is_empty() => {
                Self::Validation { origin: origin.to_string(), field, message }
            }
            other => other,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Self::Io { path: path.as_ref().display().to_string(), source }
    }
}
