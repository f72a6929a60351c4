use thiserror::Error;

/// Errors produced by the model, the harness and the input parsers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Position outside the physical half-line `x > 0`.
    #[error("position {x} au is outside the domain x > 0")]
    Domain { x: f64 },

    /// Above the atomic field strength the crossings of the effective
    /// potential with the `-I_p` line are complex: `re ± i·im`.
    #[error("no real barrier crossing above the atomic field strength (x = {re} ± {im}i au)")]
    NoRealCrossing { re: f64, im: f64 },

    /// A real-only estimator was requested in the super-atomic regime.
    #[error("{estimator} is complex for F = {field} au > F_a; use the complex decomposition")]
    ComplexRegime { estimator: &'static str, field: f64 },

    #[error("operation requires the super-atomic regime, got F = {field} au <= F_a = {atomic_field} au")]
    InvalidRegime { field: f64, atomic_field: f64 },

    #[error("key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("internal consistency: {0}")]
    Internal(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for the errors that signal a regime restriction rather than bad
    /// input.
    pub fn is_regime_error(&self) -> bool {
        matches!(
            self,
            Error::NoRealCrossing { .. } | Error::ComplexRegime { .. } | Error::InvalidRegime { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
