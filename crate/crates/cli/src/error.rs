use supercurve_numeric::NumError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier '{name}' at line {line}, column {column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Kernel(#[from] supercurve::Error),
    #[error("{0}")]
    Numeric(#[from] NumError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage errors, 3 for accuracy shortfalls, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use supercurve::Error as K;
        match self {
            CliError::Syntax { .. } | CliError::UnknownIdentifier { .. } | CliError::Usage(_) => 2,
            CliError::Kernel(K::InsufficientAccuracy(_) | K::DepthExceeded { .. }) => 3,
            CliError::Numeric(NumError::InvalidConfig(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
