use core::fmt;

/// Errors raised by construction, factorization, and evaluation routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    EmptySpectrum,
    /// Two node values coincide (exactly, or within the separation tolerance).
    DuplicateNode { first: usize, second: usize },
    NonpositiveMultiplicity { index: usize },
    /// An operation that needs distinct nodes received repeated ones.
    ConfluentSpectrum,
    /// An operation that needs a repeated node received only distinct ones.
    SimpleSpectrum,
    UnsupportedSpectrum(&'static str),
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    NotSquare { rows: usize, cols: usize },
    /// A triangular factor holds a nonzero entry outside its triangle.
    NotTriangular { row: usize, col: usize },
    DivisionByZero,
    SingularMatrix,
    NonpositiveEigenvalue { index: usize },
    SpectrumMismatch { determinant: f64, spectral_product: f64 },
    IndexOutOfRange { index: usize, len: usize },
}

impl Error {
    /// Stable, machine-readable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptySpectrum => "empty_spectrum",
            Error::DuplicateNode { .. } => "duplicate_node",
            Error::NonpositiveMultiplicity { .. } => "nonpositive_multiplicity",
            Error::ConfluentSpectrum => "confluent_spectrum",
            Error::SimpleSpectrum => "simple_spectrum",
            Error::UnsupportedSpectrum(_) => "unsupported_spectrum",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSquare { .. } => "not_square",
            Error::NotTriangular { .. } => "not_triangular",
            Error::DivisionByZero => "division_by_zero",
            Error::SingularMatrix => "singular_matrix",
            Error::NonpositiveEigenvalue { .. } => "nonpositive_eigenvalue",
            Error::SpectrumMismatch { .. } => "spectrum_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptySpectrum => write!(f, "spectrum has no nodes"),
            Error::DuplicateNode { first, second } => write!(
                f,
                "nodes {first} and {second} coincide; express repetition as a multiplicity"
            ),
            Error::NonpositiveMultiplicity { index } => {
                write!(f, "node {index} has multiplicity zero")
            }
            Error::ConfluentSpectrum => {
                write!(f, "operation requires distinct nodes but the spectrum is confluent")
            }
            Error::SimpleSpectrum => {
                write!(f, "operation requires a repeated node but the spectrum is simple")
            }
            Error::UnsupportedSpectrum(why) => write!(f, "unsupported spectrum: {why}"),
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::NotTriangular { row, col } => {
                write!(f, "entry ({row}, {col}) lies outside the declared triangle but is nonzero")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::NonpositiveEigenvalue { index } => write!(
                f,
                "node {index} is not positive; the real logarithm is undefined there"
            ),
            Error::SpectrumMismatch {
                determinant,
                spectral_product,
            } => write!(
                f,
                "spectrum does not match matrix: det = {determinant}, product of nodes = {spectral_product}"
            ),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
