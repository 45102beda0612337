use std::fmt;

use stone_groupoid::Error;
use thiserror::Error as ThisError;

/// Failures of a command, split by exit status.
#[derive(ThisError, Debug)]
pub enum CliError {
    /// Bad flags or arguments; exit 2.
    #[error("{0}")]
    Usage(String),
    /// Unreadable or malformed input; exit 2.
    #[error("{0}")]
    Format(String),
    /// A precondition of the requested computation failed; exit 1.
    #[error("stage `{stage}`: {message}")]
    Domain { stage: &'static str, message: String },
}

impl CliError {
    /// Wraps a library error raised during `stage`.
    ///
    /// Index and length errors mean the document itself is malformed, so they
    /// become format errors. A library error that already names its stage
    /// keeps that name.
    pub fn domain(stage: &'static str, e: Error) -> Self {
        match e {
            Error::IndexOutOfRange { .. } | Error::TableLength { .. } => CliError::Format(e.to_string()),
            Error::AtLevel { level, source } => match CliError::domain(stage, *source) {
                CliError::Format(m) => CliError::Format(format!("level {level}: {m}")),
                other => other.at_level(level),
            },
            Error::Stage { stage, source } => CliError::Domain {
                stage,
                message: source.to_string(),
            },
            other => CliError::Domain {
                stage,
                message: other.to_string(),
            },
        }
    }

    pub fn at_level(self, level: usize) -> Self {
        match self {
            CliError::Usage(m) => CliError::Usage(m),
            CliError::Format(m) => CliError::Format(format!("level {level}: {m}")),
            CliError::Domain { stage, message } => CliError::Domain {
                stage,
                message: format!("level {level}: {message}"),
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => 1,
            CliError::Usage(_) | CliError::Format(_) => 2,
        }
    }

    pub fn io(path: &str, e: impl fmt::Display) -> Self {
        CliError::Format(format!("{path}: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_errors_are_format_errors_even_inside_a_level() {
        let inner = Error::IndexOutOfRange {
            table: "src",
            index: 3,
            bound: 2,
        };
        let e = CliError::domain(
            "parse",
            Error::AtLevel {
                level: 1,
                source: Box::new(inner),
            },
        );
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().starts_with("level 1: "));
    }

    #[test]
    fn stage_names_from_the_library_win() {
        let e = CliError::domain(
            "pipeline",
            Error::Stage {
                stage: "skeleton",
                source: Box::new(Error::CosetLimit { limit: 1 }),
            },
        );
        assert!(matches!(e, CliError::Domain { stage: "skeleton", .. }));
        assert_eq!(e.exit_code(), 1);
    }
}
