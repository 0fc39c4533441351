use thiserror::Error;

use super::ast::{BinOp, Call, Expr};
use crate::appell::m;
use crate::error::Error;
use crate::hecke::{hecke_f, DoubleSumParams};
use crate::series::{expand_to_order, FracExp, FracSeries};
use crate::string::{string_c_triple, string_kp_lattice, string_s_hecke};
use crate::theta::{big_j, eta, jtheta, restricted_product, JForm, JKind};

/// An evaluation failure together with the subexpression that raised it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{source} (in `{expr}`)")]
pub struct EvalError {
    pub expr: String,
    pub source: Error,
}

fn at<T>(node: &impl ToString, r: Result<T, Error>) -> Result<T, EvalError> {
    r.map_err(|source| EvalError { expr: node.to_string(), source })
}

fn eval_call(call: &Call, w: FracExp) -> Result<FracSeries, Error> {
    match call {
        Call::J { a, m } => big_j(JKind::Plain, *a, *m, w),
        Call::Jb { a, m } => big_j(JKind::Bar, *a, *m, w),
        Call::Jp { m } => big_j(JKind::Prod, 0, *m, w),
        Call::Jt { x, m } => jtheta(*x, *m, JForm::Sum, w),
        Call::Eta { k } => eta(*k, w),
        Call::Am { x, m: modulus, z } => m(*x, *modulus, *z, w),
        Call::F { a, b, c, x, y } => hecke_f(&DoubleSumParams::new(*a, *b, *c, *x, *y), w),
        Call::C(i) => string_c_triple(i, w),
        Call::S(i) => string_s_hecke(i, w),
        Call::Kpl(i) => string_kp_lattice(i, w),
        Call::Rp { step, modulus, excluded, power } => restricted_product(*step, *modulus, excluded, *power, w),
    }
}

/// One pass at working order `w`. The result may be known to less than `w`
/// when negative valuations are involved; [`eval`] retries.
fn eval_at(e: &Expr, w: FracExp) -> Result<FracSeries, EvalError> {
    match e {
        // literals are exact, so they never limit the order of a product
        Expr::Rat(c) => Ok(FracSeries::constant(c.clone(), w)),
        Expr::QPow(x) => Ok(FracSeries::from_qarg(*x, w + x.exp().abs())),
        Expr::Call(c) => at(e, eval_call(c, w)),
        Expr::Neg(inner) => Ok(eval_at(inner, w)?.neg()),
        Expr::Bin(op, l, r) => {
            let a = eval_at(l, w)?;
            let b = eval_at(r, w)?;
            match op {
                BinOp::Add => Ok(a.add(&b)),
                BinOp::Sub => Ok(a.sub(&b)),
                BinOp::Mul => Ok(a.mul(&b)),
                BinOp::Div => at(e, a.div(&b)),
            }
        }
        Expr::Pow(base, k) => {
            let b = eval_at(base, w)?;
            at(e, b.pow(*k))
        }
    }
}

/// Evaluates `e` exactly to `order`.
pub fn eval(e: &Expr, order: FracExp) -> Result<FracSeries, EvalError> {
    expand_to_order(order, |w| eval_at(e, w)).map_err(|mut err: EvalError| {
        if matches!(err.source, Error::OrderNotReached { .. }) {
            err.expr = e.to_string();
        }
        err
    })
}

impl From<Error> for EvalError {
    fn from(source: Error) -> Self {
        EvalError { expr: String::new(), source }
    }
}
