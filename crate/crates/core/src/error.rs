use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix of size {size} exceeds the symbolic cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("matrix is not an element of the algebra")]
    NotInAlgebra,
    #[error("operation needs dimension at least 3, got {dim}")]
    DimensionTooSmall { dim: usize },
    #[error("subspace is not closed under the connection")]
    NotAutoparallel,
    #[error("invalid gradation: {0}")]
    GradationInvalid(String),
    #[error("connections live on different carriers")]
    CarrierMismatch,
    #[error("Ricci tensor is not symmetric")]
    RicciNotSymmetric,
    #[error("point is not generic for the representation")]
    NotGeneric,
    #[error("invalid simple-root subset: {0}")]
    InvalidSubset(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;
