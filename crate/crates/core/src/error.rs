use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("scalar {value} out of range for a field of order {order}")]
    ScalarOutOfRange { value: u32, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} outside supported range 1..=6")]
    UnsupportedDimension(usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("group order exceeds cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("element does not fix the hyperplane pointwise")]
    NotFixingHyperplane,
    #[error("hyperplane is not a reflecting hyperplane of the group")]
    NotReflecting,
    #[error("group does not fix a single hyperplane pointwise")]
    NotHyperplaneFixing,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("set is not an additive subgroup")]
    NotAdditiveSubgroup,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("basic invariants failed verification")]
    VerificationFailed,
    #[error("internal consistency violation: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
