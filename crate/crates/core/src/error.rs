use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: constant term is not invertible")]
    NotInvertible { what: &'static str },

    #[error("composition requires a zero constant term in the inner series")]
    NonzeroConstantTerm,

    #[error("constant term {0} has no exact square root")]
    NoExactSqrt(String),

    #[error("degenerate root: derivative vanishes at the base point")]
    DegenerateRoot,

    #[error("base point is not a root of the polynomial")]
    NotARoot,

    #[error("requested order {requested} exceeds the enumeration budget {budget}")]
    Budget { requested: usize, budget: usize },

    #[error("input known only through order {available}, but order {needed} is required")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("division by n with n = 0")]
    DivisionByN,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}
