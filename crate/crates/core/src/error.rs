use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size limit exceeded: {what} is {actual}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("line {line}: {source}")]
    Corpus {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NumericFailure { sweeps: usize },

    #[error("input graphs are not regular: {0}")]
    RegularityViolation(String),

    #[error("malformed spectrum: {0}")]
    MalformedSpectrum(String),

    #[error("matrix kind mismatch: expected {expected}, got {actual}")]
    KindMismatch {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("sample point {sample} is within {distance} of eigenvalue {eigenvalue}")]
    SampleTooClose {
        sample: f64,
        eigenvalue: f64,
        distance: f64,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
