use std::fmt;
use std::ops::{Mul, Neg};

use super::FracExp;

/// A signed rational power of `q`: `sign * q^exp` with `sign = ±1`.
///
/// Every specialization of `x`, `y` and `z` in the identity suites has this
/// shape, which keeps all coefficients rational.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QArg {
    negative: bool,
    exp: FracExp,
}

impl QArg {
    pub const ONE: QArg = QArg { negative: false, exp: FracExp::ZERO };
    pub const MINUS_ONE: QArg = QArg { negative: true, exp: FracExp::ZERO };

    pub fn new(sign: i8, exp: FracExp) -> Self {
        assert!(sign == 1 || sign == -1, "QArg sign must be ±1");
        QArg { negative: sign < 0, exp }
    }

    /// `+q^exp`.
    pub fn q(exp: impl Into<FracExp>) -> Self {
        QArg { negative: false, exp: exp.into() }
    }

    /// `-q^exp`.
    pub fn neg_q(exp: impl Into<FracExp>) -> Self {
        QArg { negative: true, exp: exp.into() }
    }

    pub fn sign(self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(self) -> bool {
        self.negative
    }

    pub fn exp(self) -> FracExp {
        self.exp
    }

    pub fn inv(self) -> Self {
        QArg { negative: self.negative, exp: -self.exp }
    }

    pub fn pow(self, k: i64) -> Self {
        QArg { negative: self.negative && k.rem_euclid(2) == 1, exp: self.exp.scale(k) }
    }

    /// Multiply by `q^e`.
    pub fn shift(self, e: impl Into<FracExp>) -> Self {
        QArg { negative: self.negative, exp: self.exp + e.into() }
    }

    /// `Some(n)` if this is `+q^{n * modulus}`.
    pub fn integral_power_of(self, modulus: FracExp) -> Option<i64> {
        if self.negative {
            None
        } else {
            self.exp.multiple_of(modulus)
        }
    }
}

impl Mul for QArg {
    type Output = QArg;
    fn mul(self, rhs: QArg) -> QArg {
        QArg { negative: self.negative != rhs.negative, exp: self.exp + rhs.exp }
    }
}

impl Neg for QArg {
    type Output = QArg;
    fn neg(self) -> QArg {
        QArg { negative: !self.negative, exp: self.exp }
    }
}

/// Renders in the expression-language literal syntax (`-q^(1/2)`, `q^3`, `-1`).
impl fmt::Display for QArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        let e = self.exp;
        if e.is_zero() {
            write!(f, "{sign}1")
        } else if e == FracExp::ONE {
            write!(f, "{sign}q")
        } else if e.is_integer() && !e.is_negative() {
            write!(f, "{sign}q^{}", e.num())
        } else {
            write!(f, "{sign}q^({e})")
        }
    }
}

impl fmt::Debug for QArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
