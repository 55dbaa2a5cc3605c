use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point lies outside the open unit ball (norm {0})")]
    OutsideBall(f64),
    #[error("tuple is not commuting (commutator norm {0:.3e})")]
    NotCommuting(f64),
    #[error("tuple is not nilpotent up to degree {cap}")]
    NotNilpotent { cap: usize },
    #[error("tuple is not a row contraction")]
    NotRowContraction,
    #[error("tuple is not cyclic")]
    NotCyclic,
    #[error("subspace is not invariant for the tuple")]
    NotInvariant,
    #[error("subspace is not co-invariant for the tuple")]
    NotCoinvariant,
    #[error("hypothesis `{hypothesis}` failed: {detail}")]
    HypothesisFailed { hypothesis: &'static str, detail: String },
    #[error("series did not converge within {0} terms")]
    Divergent(usize),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that report an unmet mathematical precondition
    /// (as opposed to malformed input or a numerical breakdown).
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::NotCommuting(_)
                | Error::NotNilpotent { .. }
                | Error::NotRowContraction
                | Error::NotCyclic
                | Error::NotInvariant
                | Error::NotCoinvariant
                | Error::HypothesisFailed { .. }
                | Error::OutsideBall(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
