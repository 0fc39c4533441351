//! Exact q-series arithmetic for theta functions, Appell–Lerch sums,
//! Hecke-type double-sums and the string functions of the affine Lie algebra
//! A₁⁽¹⁾, together with an expression language and an identity-verification
//! harness that checks identities coefficient by coefficient.

pub mod appell;
pub mod error;
pub mod expr;
pub mod hecke;
pub mod report;
pub mod series;
pub mod string;
pub mod suite;
pub mod theta;

mod quad;

pub use error::{Error, Result};
pub use report::{emit_report, IdentityReport, ReportFormat, Status};
pub use series::{coeff, coeff_frac, expand_to_order, Coeff, FracExp, FracSeries, QArg, Verdict};
pub use string::StringIndex;
