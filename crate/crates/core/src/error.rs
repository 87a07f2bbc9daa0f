use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("frequency {freq_hz} Hz is not covered by any band of standard `{standard}`")]
    UnmappedBand { standard: String, freq_hz: f64 },

    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Config(Vec<FieldError>),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::UnmappedBand { .. } => "unmapped-band",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}

/// One problem found while reading a config file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    /// 1-based line number, when the problem is tied to a line.
    pub line: Option<usize>,
    /// Fully qualified key, e.g. `scenario.n_tr`.
    pub key: String,
    pub message: String,
}

impl FieldError {
    pub fn new(line: Option<usize>, key: impl Into<String>, message: impl Into<String>) -> Self {
        FieldError {
            line,
            key: key.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {}: {}: {}", line, self.key, self.message),
            None => write!(f, "{}: {}", self.key, self.message),
        }
    }
}
