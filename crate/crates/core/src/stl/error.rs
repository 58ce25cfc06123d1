use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StlError {
    #[error("syntax error at {line}:{column}: found {found}, expected one of: {}", expected.join(", "))]
    Syntax { line: usize, column: usize, found: String, expected: Vec<String> },

    #[error("unknown operator `{name}` at {line}:{column}")]
    UnknownOperator { name: String, line: usize, column: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("sample index {index} out of range for trace of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("input and output sets overlap on {0:?}")]
    OverlappingSets(Vec<String>),

    #[error("division by a value with magnitude below 1e-12 at sample {index}")]
    DivisionByZero { index: usize },

    #[error("interval bound {bound} is not a multiple of the trace step {dt}")]
    IntervalNotOnGrid { bound: f64, dt: f64 },

    #[error("inconsistent (output robustness, input vacuity) pair ({mu}, {nu})")]
    InconsistentPair { mu: String, nu: String },

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("trace I/O: {0}")]
    Io(String),
}

impl From<std::io::Error> for StlError {
    fn from(e: std::io::Error) -> Self {
        StlError::Io(e.to_string())
    }
}

impl From<csv::Error> for StlError {
    fn from(e: csv::Error) -> Self {
        StlError::Io(e.to_string())
    }
}
