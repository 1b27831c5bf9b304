use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("element does not lie in the ambient algebra")]
    NotInAlgebra,
    #[error("commuting family must consist of diagonal matrices")]
    NonDiagonalFamily,
    #[error("non-semisimple action, invalid Cartan choice: {0}")]
    NotSemisimple(String),
    #[error("unsupported realization: {0}")]
    Unsupported(String),
    #[error("rank {rank} exceeds the Weyl enumeration cap {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("weight {0} is not dominant integral")]
    NotDominant(String),
    #[error("H must lie in the diagonal Cartan subalgebra")]
    NotInCartan,
    #[error("parabolic and pair do not share the Cartan subalgebra")]
    CartanMismatch,
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("restriction not discretely decomposable for this embedding: {0}")]
    Incompatible(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("character decomposition failed: {0}")]
    Decomposition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by the caller's request rather than by the engine.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Decomposition(_) | Error::Internal(_) | Error::NotSemisimple(_) | Error::Singular)
    }
}
