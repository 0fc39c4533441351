//! A small expression language over the q-series objects, used to state
//! identities as text and evaluate them exactly.

mod ast;
mod eval;
mod parser;

pub use ast::{BinOp, Call, Expr};
pub use eval::{eval, EvalError};
pub use parser::{parse, ParseError};

use thiserror::Error;

use crate::series::{FracExp, FracSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Parses and evaluates `text` exactly to `order`.
pub fn eval_str(text: &str, order: FracExp) -> Result<FracSeries, ExprError> {
    Ok(eval(&parse(text)?, order)?)
}
