use thiserror::Error;

/// Errors raised by the complex engine and the biquaternion layers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch ({left} vs {right})")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("{op}: expected even dimensions, got {rows}x{cols}")]
    OddDimension {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("{op}: expected a single column, got {cols} columns")]
    NotColumn { op: &'static str, cols: usize },
    #[error("{op}: entry data has length {len}, expected {expected}")]
    BadLength {
        op: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("non-finite value in input")]
    NonFinite,
    #[error("{op}: not invertible")]
    NotInvertible { op: &'static str },
    #[error("eigen solver did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("similarity witness is degenerate (weak norm {norm:e})")]
    DegenerateWitness { norm: f64 },
    #[error("regular eigenvector lift lost rank")]
    RankDeficientLift,
    #[error("eigenpair residual {residual:e} exceeds tolerance {tol:e}")]
    InvalidPair { residual: f64, tol: f64 },
    #[error("matrix is not triangular")]
    NotTriangular,
    #[error("scaling probe: {0}")]
    DegenerateProbe(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dims(op: &'static str, l: (usize, usize), r: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            op,
            left: format!("{}x{}", l.0, l.1),
            right: format!("{}x{}", r.0, r.1),
        }
    }

    /// True for shape errors (wrong sizes, non-square, odd dimensions).
    pub fn is_dimension(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::NotSquare { .. }
                | Error::OddDimension { .. }
                | Error::NotColumn { .. }
                | Error::BadLength { .. }
                | Error::NotTriangular
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
