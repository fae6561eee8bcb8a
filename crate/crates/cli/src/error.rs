use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed line in a config file.
    #[error("{source_name}:{line}: {message}")]
    Syntax {
        source_name: String,
        line: usize,
        message: String,
    },

    /// A key that parsed but holds an unusable value. `line` is absent for
    /// defaults and for checks that involve several keys.
    #[error("{}config `{key}`: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Field {
        key: String,
        line: Option<usize>,
        message: String,
    },

    /// The scenario runs into a numerical limit that a config change fixes.
    #[error("{0}")]
    Scenario(String),

    #[error("input data: {0}")]
    Data(fastlight_core::Error),

    #[error("fit failed: {0}")]
    Fit(fastlight_core::Error),

    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    /// 2 config, 3 input data, 4 fit failure, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Field { .. } | CliError::Scenario(_) => 2,
            CliError::Data(_) => 3,
            CliError::Fit(_) => 4,
            CliError::Output(_) => 1,
        }
    }

    pub(crate) fn field(key: &str, line: Option<usize>, message: impl Into<String>) -> Self {
        CliError::Field {
            key: key.to_string(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn output(err: impl std::fmt::Display) -> Self {
        CliError::Output(err.to_string())
    }
}

/// Classifies a core error raised while reading or fitting user data.
pub(crate) fn from_fit(err: fastlight_core::Error) -> CliError {
    match err {
        fastlight_core::Error::NoMinimum { .. } => CliError::Fit(err),
        other => CliError::Data(other),
    }
}
