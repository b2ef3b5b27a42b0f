use subdiff::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {msg}")]
    Parse { line: usize, key: Option<String>, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn parse(line: usize, key: Option<&str>, msg: impl Into<String>) -> Self {
        let msg = msg.into();
        Self::Parse {
            line,
            msg: match key {
                Some(k) => format!("{k}: {msg}"),
                None => msg,
            },
            key: key.map(str::to_owned),
        }
    }

    /// 2 for config errors, 3 for violated invariants, 4 for numerical
    /// failures, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse { .. } => 2,
            Self::Invariant(_) => 3,
            Self::Numerical(_) => 4,
            Self::Io(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::Parse(_) => Self::Parse { line: 0, key: None, msg },
            CoreError::Quadrature(_)
            | CoreError::Bracket(_)
            | CoreError::Singular { .. }
            | CoreError::NonFinite { .. }
            | CoreError::DegenerateFit { .. } => Self::Numerical(msg),
            _ => Self::Invariant(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}
