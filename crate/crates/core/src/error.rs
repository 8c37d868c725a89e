use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("term {index} has valuation {actual}, below its declared bound {bound}")]
    ValuationViolation { index: i64, bound: i64, actual: i64 },

    #[error("product factor {index} is not of the form 1 + O(t)")]
    NonUnitFactor { index: i64 },

    #[error("valuation bound is not nondecreasing at n = {0}")]
    NonMonotoneBound(i64),

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("no admissible specialization after {0} draws")]
    SpecExhausted(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
