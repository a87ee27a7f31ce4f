use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field degree must be at least 1")]
    ZeroDegree,

    #[error("{what} must be at least 1")]
    ZeroParameter { what: &'static str },

    #[error("{cap} cap exceeded: need {requested}, limit is {limit}")]
    CapExceeded {
        cap: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different towers or rings")]
    CrossTower,

    #[error("{value} is not an element of a field with {order} elements")]
    NotInField { value: u32, order: u32 },

    #[error("expected {expected} coefficient subspaces, got {got}")]
    WrongSubspaceCount { expected: usize, got: usize },

    #[error("closure V_i V_j in V_(i+j) fails for pairs {pairs:?}")]
    ClosureViolation { pairs: Vec<(usize, usize)> },

    #[error("coefficient {index} lies outside its coefficient subspace")]
    NotInRing { index: usize },

    #[error("element has {got} coefficients but truncation level is {truncation}")]
    TooManyCoefficients { got: usize, truncation: usize },

    #[error("order {order} outside the supported range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },

    #[error("element is a unit")]
    UnitInput,

    #[error("element is zero modulo the truncation")]
    ZeroInput,

    #[error("unknown family {0}")]
    UnknownFamily(u32),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
