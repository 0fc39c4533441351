//! Integer ranges of convex quadratics, used to bound every enumeration.

use crate::series::FracExp;

/// `a n^2 + b n + c` with `a > 0`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Quadratic {
    pub a: FracExp,
    pub b: FracExp,
    pub c: FracExp,
}

impl Quadratic {
    pub fn new(a: FracExp, b: FracExp, c: FracExp) -> Self {
        assert!(a.is_positive(), "quadratic must be convex");
        Quadratic { a, b, c }
    }

    pub fn at(&self, n: i64) -> FracExp {
        let n = FracExp::int(n);
        self.a * n * n + self.b * n + self.c
    }

    /// Integer minimizer and minimum value.
    pub fn min(&self) -> (i64, FracExp) {
        let vertex = -self.b / self.a.scale(2);
        let lo = vertex.floor();
        let (vl, vh) = (self.at(lo), self.at(lo + 1));
        if vl <= vh {
            (lo, vl)
        } else {
            (lo + 1, vh)
        }
    }

    /// The integers `n` with value `<= bound`, as an inclusive interval.
    pub fn range_le(&self, bound: FracExp) -> Option<(i64, i64)> {
        let (n0, v0) = self.min();
        if v0 > bound {
            return None;
        }
        let mut lo = n0;
        while self.at(lo - 1) <= bound {
            lo -= 1;
        }
        let mut hi = n0;
        while self.at(hi + 1) <= bound {
            hi += 1;
        }
        Some((lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        // n(n-1)/2 <= 3  ->  n in [-2, 3]
        let q = Quadratic::new(FracExp::new(1, 2), FracExp::new(-1, 2), FracExp::ZERO);
        assert_eq!(q.range_le(FracExp::int(3)), Some((-2, 3)));
        assert_eq!(q.min(), (0, FracExp::ZERO));
        assert_eq!(q.range_le(FracExp::int(-1)), None);
    }
}
