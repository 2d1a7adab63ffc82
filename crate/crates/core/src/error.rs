use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the real domain of a function or field.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    /// Branch point of a multivalued function (e.g. `atanh` at ±1).
    #[error("branch point: {0}")]
    BranchPoint(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(String),

    #[error("parity precondition failed: {0}")]
    Parity(String),

    #[error("degenerate dilation: {0}")]
    DegenerateDilation(String),

    /// A decomposition was evaluated outside the region where it is stated.
    #[error("domain constraint violated: {0}")]
    DomainConstraint(String),

    #[error("surface is not spacelike at ({0}, {1})")]
    NotSpacelike(f64, f64),

    #[error("field is not real-valued here: |Im| = {0:e}")]
    NotReal(f64),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}
