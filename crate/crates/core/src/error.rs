use thiserror::Error;

use crate::series::FracExp;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot invert a series with no stored terms")]
    ZeroSeries,

    #[error("comparison requested to order {requested} but a series is only known to order {available}")]
    OrderTooLarge { requested: FracExp, available: FracExp },

    #[error("pochhammer argument exponent {exp} is not positive")]
    NonPositiveExponent { exp: FracExp },

    #[error("singular specialization: {0}")]
    SingularSpec(String),

    #[error("could not reach order {wanted} (best {reached})")]
    OrderNotReached { wanted: FracExp, reached: FracExp },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
