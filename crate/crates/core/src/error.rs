use thiserror::Error;

/// Errors raised by space construction, cover calculus and the cohomology pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point index {index} out of range for a space with {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("relation is not reflexive: point {0} is missing from its own closure")]
    NotReflexive(usize),

    #[error("relation has {rows} rows but {expected} points were declared")]
    RelationShape { rows: usize, expected: usize },

    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },

    #[error("closure radius must be a non-negative number")]
    InvalidRadius,

    #[error("point {0} has a NaN coordinate")]
    NanCoordinate(usize),

    #[error("subset has length {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("cover element {0} is not contained in the cover base")]
    ElementOutsideBase(usize),

    #[error("covers have different bases")]
    BaseMismatch,

    #[error("restriction target is not contained in the cover base")]
    NotASubset,

    #[error("family is not an i-cover of its base: {0}")]
    NotAnICover(String),

    #[error("inner family count {found} does not match outer cover size {expected}")]
    InnerCountMismatch { expected: usize, found: usize },

    #[error("lattice cap {cap} exceeded ({reached} elements reached)")]
    LatticeCapExceeded { cap: usize, reached: usize },

    #[error("enumeration cap {cap} exceeded")]
    EnumerationCapExceeded { cap: usize },

    #[error("set {0} is not an element of the lattice")]
    NotInLattice(String),

    #[error("presheaf has no restriction from element {from} to element {to}")]
    MissingRestriction { from: usize, to: usize },

    #[error("restriction {from} -> {to} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    RestrictionShape {
        from: usize,
        to: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid coefficient ring: {0}")]
    InvalidRing(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("cochain complex violates d∘d = 0 at degree {0}")]
    NotAComplex(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by a resource cap rather than by malformed input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::LatticeCapExceeded { .. } | Error::EnumerationCapExceeded { .. })
    }
}
