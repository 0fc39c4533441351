//! Named identity suites and the runner that verifies them.
//!
//! Every identity is a pair of sides evaluated exactly to a truncation order
//! and compared coefficient by coefficient. Sides are either expression-language
//! text or a library routine with no textual form (tagged with a descriptive
//! label). Randomized suites draw from a ChaCha stream seeded per equation, so
//! a seed fixes every instance.

mod fixed;
mod random;

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::error::Error;
use crate::expr::{eval, parse};
use crate::report::{Discrepancy, IdentityReport, Status};
use crate::series::{Coeff, FracExp, FracSeries, Verdict};

pub type NativeFn = Arc<dyn Fn(FracExp) -> Result<FracSeries, Error> + Send + Sync>;

#[derive(Clone)]
pub enum Side {
    Expr(String),
    Native { text: String, eval: NativeFn },
}

impl Side {
    pub fn expr(text: impl Into<String>) -> Self {
        Side::Expr(text.into())
    }

    pub fn native<F>(text: impl Into<String>, f: F) -> Self
    where
        F: Fn(FracExp) -> Result<FracSeries, Error> + Send + Sync + 'static,
    {
        Side::Native { text: text.into(), eval: Arc::new(f) }
    }

    pub fn text(&self) -> &str {
        match self {
            Side::Expr(t) | Side::Native { text: t, .. } => t,
        }
    }

    fn evaluate(&self, order: FracExp) -> Result<FracSeries, String> {
        match self {
            Side::Expr(t) => {
                let ast = parse(t).map_err(|e| e.to_string())?;
                eval(&ast, order).map_err(|e| e.to_string())
            }
            Side::Native { text, eval } => eval(order).map_err(|e| format!("{e} (in `{text}`)")),
        }
    }
}

impl fmt::Debug for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

#[derive(Debug, Clone)]
pub struct Identity {
    pub id: String,
    pub lhs: Side,
    pub rhs: Side,
    /// Default verification order, used unless the caller overrides it.
    pub order: FracExp,
}

impl Identity {
    pub fn new(id: impl Into<String>, lhs: Side, rhs: Side, order: i64) -> Self {
        Identity { id: id.into(), lhs, rhs, order: FracExp::int(order) }
    }

    pub fn exprs(id: impl Into<String>, lhs: &str, rhs: &str, order: i64) -> Self {
        Self::new(id, Side::expr(lhs), Side::expr(rhs), order)
    }
}

pub const SUITES: &[&str] = &[
    "notation",
    "theta-id",
    "appell",
    "hecke-fe",
    "expansion",
    "string-sym",
    "cross",
    "kp-hecke",
    "kp-eta",
    "main-thm",
];

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected one of: {list}, all)", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("invalid fault `{0}`: expected ID@EXPONENT")]
    BadFault(String),
}

/// The identities of a suite, in declaration order. `all` concatenates every suite.
pub fn suite_identities(name: &str, seed: u64) -> Result<Vec<Identity>, SuiteError> {
    Ok(match name {
        "notation" => fixed::notation(),
        "theta-id" => [random::theta(seed), fixed::theta_lemma()].concat(),
        "appell" => [random::appell(seed), fixed::appell_evals()].concat(),
        "hecke-fe" => random::hecke(seed),
        "expansion" => [random::expansion(seed), fixed::expansion()].concat(),
        "string-sym" => fixed::string_sym(),
        "cross" => fixed::cross(),
        "kp-hecke" => fixed::kp_hecke(),
        "kp-eta" => fixed::kp_eta(),
        "main-thm" => fixed::main_thm(),
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(suite_identities(s, seed)?);
            }
            all
        }
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    })
}

/// Adds `delta` to one coefficient of an identity's left side after evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub identity_id: String,
    pub exponent: FracExp,
    pub delta: Coeff,
}

impl Fault {
    pub fn new(identity_id: impl Into<String>, exponent: FracExp) -> Self {
        Fault { identity_id: identity_id.into(), exponent, delta: crate::series::coeff(1) }
    }

    /// Parses `ID@EXPONENT`.
    pub fn parse(spec: &str) -> Result<Self, SuiteError> {
        let bad = || SuiteError::BadFault(spec.to_string());
        let (id, e) = spec.rsplit_once('@').ok_or_else(bad)?;
        if id.is_empty() {
            return Err(bad());
        }
        Ok(Fault::new(id, e.trim().parse().map_err(|_| bad())?))
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides every identity's default order.
    pub order: Option<FracExp>,
    pub seed: Option<u64>,
    pub faults: Vec<Fault>,
}

/// Verifies one identity.
pub fn run_identity(identity: &Identity, order: Option<FracExp>, fault: Option<&Fault>) -> IdentityReport {
    let order = order.unwrap_or(identity.order);
    let start = Instant::now();
    let outcome = identity
        .lhs
        .evaluate(order)
        .and_then(|l| Ok((l, identity.rhs.evaluate(order)?)))
        .and_then(|(mut l, r)| {
            if let Some(f) = fault {
                let c = l.coeff(f.exponent) + &f.delta;
                l.set_coeff(f.exponent, c);
            }
            l.equal_to_order(&r, order).map_err(|e| e.to_string())
        });
    let runtime_ms = start.elapsed().as_millis() as u64;
    let (status, first_discrepancy, error) = match outcome {
        Ok(Verdict::Equal) => (Status::Verified, None, None),
        Ok(Verdict::FirstDiscrepancy { exponent, lhs, rhs }) => (
            Status::Failed,
            Some(Discrepancy { exponent, lhs_coeff: lhs, rhs_coeff: rhs }),
            None,
        ),
        Err(e) => (Status::Error, None, Some(e)),
    };
    IdentityReport {
        identity_id: identity.id.clone(),
        lhs: identity.lhs.text().to_string(),
        rhs: identity.rhs.text().to_string(),
        order,
        status,
        first_discrepancy,
        runtime_ms,
        error,
    }
}

/// Verifies identities in parallel; reports keep the input order.
pub fn run_identities(ids: &[Identity], order: Option<FracExp>, faults: &[Fault]) -> Vec<IdentityReport> {
    ids.par_iter()
        .map(|id| run_identity(id, order, faults.iter().find(|f| f.identity_id == id.id)))
        .collect()
}

pub fn run_suite_with(name: &str, opts: &RunOptions) -> Result<Vec<IdentityReport>, SuiteError> {
    let ids = suite_identities(name, opts.seed.unwrap_or(DEFAULT_SEED))?;
    Ok(run_identities(&ids, opts.order, &opts.faults))
}

/// Runs a suite at its default orders (or `order` for every member) with the default seed.
pub fn run_suite(name: &str, order: Option<FracExp>) -> Result<Vec<IdentityReport>, SuiteError> {
    run_suite_with(name, &RunOptions { order, ..Default::default() })
}

/// 2 if any report is an error, else 1 if any failed, else 0.
pub fn exit_code(reports: &[IdentityReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::Failed) {
        1
    } else {
        0
    }
}
