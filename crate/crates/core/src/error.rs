use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("incompatible fields: {0} and {1}")]
    IncompatibleFields(String, String),

    #[error("p-th root of {0} requires enlarging the field tower")]
    ExtensionNeeded(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("{0} is not algebraic over {1} within the current tower")]
    NotAlgebraic(String, String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("algebra has no p-map")]
    NoPMap,

    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("subalgebra is not p-closed: {0}")]
    NotPClosed(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("exponent bound violated: {0}")]
    ExponentBound(String),

    #[error("module is not in the category: {0}")]
    NotInCategory(String),

    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("divisibility fails: {0}")]
    NotDivisor(String),

    #[error("algebra has nonzero center; supply a p-envelope")]
    NonzeroCenter,

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("undecided after {0} attempts")]
    Undecided(usize),
}
