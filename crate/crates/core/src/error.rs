use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("signal lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid kernel term: {0}")]
    InvalidTerm(String),

    #[error("invalid filter: {0}")]
    InvalidFilter(String),

    #[error("order {order} is outside 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("dense materialization needs {required} coefficients, budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },

    #[error("empty time range")]
    EmptyRange,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("iteration {iteration} diverged: sup norm {norm:e} exceeds {threshold:e}")]
    Diverged {
        iteration: usize,
        norm: f64,
        threshold: f64,
    },

    #[error("system description: {0}")]
    Schema(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
