use thiserror::Error;

/// Errors raised by the algebra, seminorm, series and lattice routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands live over different generator bases")]
    BasisMismatch,
    #[error("invalid generator basis: {0}")]
    InvalidBasis(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parity-block violation at entry ({row}, {col})")]
    ParityBlock { row: usize, col: usize },
    #[error("matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("form is not graded-symmetric at entry ({row}, {col})")]
    NotGradedSymmetric { row: usize, col: usize },
    #[error("expected a homogeneous element of degree {expected}")]
    Degree { expected: usize },
    #[error("element contains odd generators")]
    OddGenerator,
    #[error("functional is nonzero on odd generator `{0}`")]
    OddFunctional(String),
    #[error("complex entry where a real value is required")]
    ComplexInput,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("truncation budget too small: degree {degree} is not exact")]
    Truncation { degree: usize },
    #[error("lattice: {0}")]
    Lattice(String),
    #[error("linear system is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
