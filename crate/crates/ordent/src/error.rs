use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },

    #[error("vector has no mass (sum = {sum})")]
    ZeroMass { sum: f64 },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parameter {name} = {value} outside its admissible range")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("infeasible order parameters: 1 + sum(A^{i}_j, j <= {k}) = {partial_sum} <= 0")]
    InfeasibleParams { i: usize, k: usize, partial_sum: f64 },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix has nonpositive trace ({trace})")]
    ZeroTrace { trace: f64 },

    #[error("eigensolver failed to converge")]
    ConvergenceFailure,

    #[error("chain is not increasing at index {index}")]
    NotIncreasing { index: usize },

    #[error("chain is not numerically convergent (residual {residual})")]
    NotConvergent { residual: f64 },

    #[error("probe precondition failed: {reason}")]
    PreconditionFailed { reason: String },

    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },

    #[error("negative value for token {token} at index {index}: {value}")]
    NegativeValue { token: String, index: usize, value: f64 },

    #[error("vector file is empty")]
    EmptyFile,

    #[error("unknown token: {token}")]
    UnknownToken { token: String },

    #[error("zero vector for token: {token}")]
    ZeroVector { token: String },

    #[error("weight vector has {got} entries, expected {expected}")]
    WeightMismatch { expected: usize, got: usize },

    #[error("invalid similarity weights: {reason}")]
    InvalidWeights { reason: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
