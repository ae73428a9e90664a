use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: pivot valuation {valuation} inside guard band of precision {precision}")]
    PrecisionExhausted { valuation: u32, precision: u32 },
    #[error("d_in * d_out is not zero")]
    CompositionNonZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("lattice is not normalizable: {0}")]
    NotNormalized(String),
    #[error("vector does not lie in the lattice")]
    NotInLattice,
    #[error("{0} is not a homogeneous tube point")]
    NotHomogeneousPoint(String),
    #[error("extension search failed: {0}")]
    ExtensionSearchFailed(String),
    #[error("indecomposability test inconclusive")]
    Inconclusive,
    #[error("lattice is not regular")]
    NotRegular,
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("element is not in the slot M(n)")]
    ElementNotInSlot,
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
