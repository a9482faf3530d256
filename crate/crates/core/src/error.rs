use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial cannot be normalized: {0}")]
    NotNormalizable(String),

    #[error("cannot evaluate a Laurent polynomial at 0")]
    ZeroEvaluationPoint,

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("transform determinant {0} is not a unit")]
    NonUnitTransform(String),

    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    BadMinorSize { k: usize, rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("not a Seifert matrix: {0}")]
    NotSeifert(String),

    #[error("omega = exp(2 pi i * {theta}) is too close to a root of the Alexander polynomial")]
    OmegaAtAlexanderRoot { theta: String },

    #[error("theta must be a rational in (0, 1), got {0}")]
    InvalidTheta(String),

    #[error("Blanchfield table self-check failed: {0}")]
    ConventionSelfCheckFailed(String),

    #[error("matrix is not hermitian")]
    NotHermitian,

    #[error("form is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("form is not symmetric")]
    NotSymmetric,

    #[error("verdict carries no diagonalizing witness")]
    NotDiagonalized,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    TableParse { line: usize, message: String },

    #[error("line {line}: not a Seifert matrix: {message}")]
    TableNotSeifert { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
