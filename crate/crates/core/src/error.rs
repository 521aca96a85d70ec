use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("object has {size} elements, cap is {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("half-integer power of `{var}` needs a square root of a non-monomial binding")]
    FractionalSubstitution { var: String },

    #[error("negative power of `{var}` needs an invertible monomial binding")]
    NonInvertibleSubstitution { var: String },

    #[error("half-integer power of `{var}` evaluated at non-square {value}")]
    NonSquareBase { var: String, value: String },

    #[error("variable `{0}` has no value")]
    UnboundVariable(String),

    #[error("division by zero evaluating `{0}`")]
    DivisionByZero(String),

    #[error("expected a grade-1 object, got {size} elements")]
    WrongGrade { size: usize },

    #[error("selector does not match the rank profile: {0}")]
    ProfileMismatch(String),

    #[error("selector violates the uniformity constraint: {0}")]
    NonUniformSelector(String),

    #[error("order-averaged exponential is not integral (sum {sum} over {orderings} orderings)")]
    NonIntegralAverage { sum: String, orderings: String },

    #[error("selectors are incompatible with the morphism: {0}")]
    SelectorIncompatible(String),

    #[error("delete and contract sets overlap")]
    OverlappingSets,

    #[error("element {element} out of range for ground set of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("not a matroid: {0}")]
    NotAMatroid(String),

    #[error("not a matroid perspective: {0}")]
    NotAPerspective(String),

    #[error("not a delta-matroid: {0}")]
    NotADeltaMatroid(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid ribbon graph: {0}")]
    InvalidRibbon(String),

    #[error("invalid vertex partition: {0}")]
    InvalidPartition(String),

    #[error("embedding is not cellular")]
    NotCellular,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}
