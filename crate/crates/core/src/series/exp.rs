use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// An exact rational exponent of `q`, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FracExp(Ratio<i64>);

impl FracExp {
    pub const ZERO: FracExp = FracExp(Ratio::new_raw(0, 1));
    pub const ONE: FracExp = FracExp(Ratio::new_raw(1, 1));

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        FracExp(Ratio::new(num, den))
    }

    pub fn int(n: i64) -> Self {
        FracExp(Ratio::from_integer(n))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        FracExp(r)
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn num(self) -> i64 {
        *self.0.numer()
    }

    pub fn den(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn ceil(self) -> i64 {
        self.0.ceil().to_integer()
    }

    pub fn abs(self) -> Self {
        FracExp(self.0.abs())
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Multiplication by an integer.
    pub fn scale(self, k: i64) -> Self {
        FracExp(self.0 * k)
    }

    /// `Some(k)` when `self = k * modulus` for an integer `k`.
    pub fn multiple_of(self, modulus: FracExp) -> Option<i64> {
        let k = self.0 / modulus.0;
        k.is_integer().then(|| k.to_integer())
    }

    /// Always `num/den`, e.g. `3/1`.
    pub fn to_fraction_string(self) -> String {
        format!("{}/{}", self.num(), self.den())
    }

    pub fn lcm_den(self, other: Self) -> i64 {
        self.den().lcm(&other.den())
    }
}

impl fmt::Display for FracExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den() == 1 {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl fmt::Debug for FracExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FracExp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_fraction_string())
    }
}

impl FromStr for FracExp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i64 = n.parse().map_err(|_| format!("bad rational `{s}`"))?;
        let den: i64 = d.parse().map_err(|_| format!("bad rational `{s}`"))?;
        if den <= 0 {
            return Err(format!("denominator must be positive in `{s}`"));
        }
        Ok(FracExp::new(num, den))
    }
}

impl From<i64> for FracExp {
    fn from(n: i64) -> Self {
        FracExp::int(n)
    }
}

impl Add for FracExp {
    type Output = FracExp;
    fn add(self, rhs: Self) -> Self {
        FracExp(self.0 + rhs.0)
    }
}

impl Sub for FracExp {
    type Output = FracExp;
    fn sub(self, rhs: Self) -> Self {
        FracExp(self.0 - rhs.0)
    }
}

impl Mul for FracExp {
    type Output = FracExp;
    fn mul(self, rhs: Self) -> Self {
        FracExp(self.0 * rhs.0)
    }
}

/// Exact division; panics on a zero divisor.
impl Div for FracExp {
    type Output = FracExp;
    fn div(self, rhs: Self) -> Self {
        FracExp(self.0 / rhs.0)
    }
}

impl Neg for FracExp {
    type Output = FracExp;
    fn neg(self) -> Self {
        FracExp(-self.0)
    }
}

impl AddAssign for FracExp {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl SubAssign for FracExp {
    fn sub_assign(&mut self, rhs: Self) {
        self.0 -= rhs.0;
    }
}
