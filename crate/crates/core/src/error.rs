use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("{0} is not a supported prime power")]
    InvalidField(u32),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
    #[error("matrix is singular")]
    Singular,
    #[error("vertices do not form a simplex of the apartment")]
    NotASimplex,
    #[error("not a chamber of the apartment")]
    NotAChamber,
    #[error("not an edge of the apartment")]
    NotAnEdge,
    #[error("operator index must be 1 or 2, got {0}")]
    InvalidIndex(u8),
    #[error("unknown level `{0}`")]
    UnknownLevel(String),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("charpoly coefficient left the base field during interpolation")]
    InterpolationFailed,
    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
