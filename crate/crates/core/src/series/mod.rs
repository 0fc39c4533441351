//! Exact sparse truncated Laurent series in `q`.
//!
//! A [`FracSeries`] stores finitely many terms `c * q^e` with rational `e` and
//! rational `c`, together with an `order`: every coefficient at an exponent
//! `<= order` is exact, everything above it is unknown. Arithmetic propagates
//! the order conservatively, and [`FracSeries::equal_to_order`] refuses to
//! compare past it.

mod exp;
mod qarg;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Bound::{Excluded, Unbounded};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use exp::FracExp;
pub use qarg::QArg;

use crate::error::{Error, Result};

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn coeff_frac(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a coefficient as `num/den`.
pub fn coeff_fraction_string(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

#[derive(Clone, PartialEq, Eq)]
pub struct FracSeries {
    terms: BTreeMap<FracExp, Coeff>,
    order: FracExp,
}

/// Result of comparing two series up to a given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    FirstDiscrepancy { exponent: FracExp, lhs: Coeff, rhs: Coeff },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

impl FracSeries {
    pub fn zero(order: FracExp) -> Self {
        FracSeries { terms: BTreeMap::new(), order }
    }

    pub fn one(order: FracExp) -> Self {
        Self::constant(coeff(1), order)
    }

    pub fn constant(c: Coeff, order: FracExp) -> Self {
        Self::monomial(c, FracExp::ZERO, order)
    }

    pub fn monomial(c: Coeff, e: FracExp, order: FracExp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && e <= order {
            terms.insert(e, c);
        }
        FracSeries { terms, order }
    }

    /// `sign * q^exp` as a series known to `order`.
    pub fn from_qarg(x: QArg, order: FracExp) -> Self {
        Self::monomial(coeff(x.sign() as i64), x.exp(), order)
    }

    /// Sums duplicate exponents and drops zero coefficients and terms above `order`.
    pub fn from_terms<I>(terms: I, order: FracExp) -> Self
    where
        I: IntoIterator<Item = (FracExp, Coeff)>,
    {
        let mut map: BTreeMap<FracExp, Coeff> = BTreeMap::new();
        for (e, c) in terms {
            if e <= order {
                *map.entry(e).or_insert_with(Coeff::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        FracSeries { terms: map, order }
    }

    /// Builds a series from integer coefficients indexed by `num` where the
    /// exponent is `num / den`.
    pub fn from_scaled_ints<I>(terms: I, den: i64, order: FracExp) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut map = BTreeMap::new();
        for (n, c) in terms {
            let e = FracExp::new(n, den);
            if c != 0 && e <= order {
                map.insert(e, coeff(c));
            }
        }
        FracSeries { terms: map, order }
    }

    pub fn order(&self) -> FracExp {
        self.order
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FracExp, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: FracExp) -> Coeff {
        self.terms.get(&e).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Least stored exponent.
    pub fn valuation(&self) -> Option<FracExp> {
        self.terms.keys().next().copied()
    }

    pub fn leading(&self) -> Option<(FracExp, &Coeff)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    /// Valuation, or the order for a series with no stored terms.
    fn effective_valuation(&self) -> FracExp {
        self.valuation().unwrap_or(self.order)
    }

    /// Lowers the order to `order` (never raises it).
    pub fn truncate(&self, order: FracExp) -> Self {
        let order = order.min(self.order);
        let terms = self
            .terms
            .range(..=order)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        FracSeries { terms, order }
    }

    /// Overwrites one coefficient. Exponents above the order are ignored.
    pub fn set_coeff(&mut self, e: FracExp, c: Coeff) {
        if e > self.order {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        let terms = self.terms.iter().map(|(e, x)| (*e, x * c)).collect();
        FracSeries { terms, order: self.order }
    }

    /// Multiplication by the exact monomial `c * q^e`; the order shifts by `e`.
    pub fn mul_monomial(&self, c: &Coeff, e: FracExp) -> Self {
        if c.is_zero() {
            return Self::zero(self.order + e);
        }
        let terms = self.terms.iter().map(|(x, v)| (*x + e, v * c)).collect();
        FracSeries { terms, order: self.order + e }
    }

    pub fn mul_qarg(&self, x: QArg) -> Self {
        self.mul_monomial(&coeff(x.sign() as i64), x.exp())
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let order = self.order.min(other.order);
        let mut terms: BTreeMap<FracExp, Coeff> = self
            .terms
            .range(..=order)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        for (e, c) in other.terms.range(..=order) {
            let slot = terms.entry(*e).or_insert_with(Coeff::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        FracSeries { terms, order }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        FracSeries { terms, order: self.order }
    }

    /// Cauchy product. The result is known to
    /// `min(a.order + val(b), b.order + val(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.effective_valuation())
            .min(other.order + self.effective_valuation());
        let mut terms: BTreeMap<FracExp, Coeff> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = *ea + *eb;
                if e > order {
                    break;
                }
                let prod = ca * cb;
                match terms.get_mut(&e) {
                    Some(slot) => *slot += prod,
                    None => {
                        terms.insert(e, prod);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        FracSeries { terms, order }
    }

    /// `self * (1 - sign * q^w)` for `w > 0`; the order is unchanged.
    pub fn mul_one_minus(&self, sign: i8, w: FracExp) -> Self {
        debug_assert!(w.is_positive());
        let mut terms = self.terms.clone();
        for (e, c) in self.terms.range(..=self.order - w) {
            let slot = terms.entry(*e + w).or_insert_with(Coeff::zero);
            if sign > 0 {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        FracSeries { terms, order: self.order }
    }

    /// `self / (1 - sign * q^w)` for `w > 0`; the order is unchanged.
    pub fn div_one_minus(&self, sign: i8, w: FracExp) -> Self {
        debug_assert!(w.is_positive());
        let limit = self.order - w;
        let mut terms = self.terms.clone();
        let mut cursor = terms.keys().next().copied();
        while let Some(e) = cursor {
            if e > limit {
                break;
            }
            let c = terms[&e].clone();
            if !c.is_zero() {
                let slot = terms.entry(e + w).or_insert_with(Coeff::zero);
                if sign > 0 {
                    *slot += c;
                } else {
                    *slot -= c;
                }
            }
            cursor = terms.range((Excluded(e), Unbounded)).next().map(|(k, _)| *k);
        }
        terms.retain(|_, c| !c.is_zero());
        FracSeries { terms, order: self.order }
    }

    /// Multiplicative inverse. If `self` has valuation `v` and order `o`, the
    /// inverse has valuation `-v` and order `o - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let (v, lead) = self.leading().ok_or(Error::ZeroSeries)?;
        let out_order = self.order - v - v;
        let rel = self.order - v;
        // Common denominator for the relative exponents.
        let mut den = rel.den();
        for e in self.terms.keys() {
            den = den.lcm(&(*e - v).den());
        }
        let n_max = (rel.ratio() * den).floor().to_integer();
        let n_max = usize::try_from(n_max).unwrap_or(0);
        let rel_terms: Vec<(usize, &Coeff)> = self
            .terms
            .iter()
            .skip(1)
            .filter_map(|(e, c)| {
                let k = ((*e - v).ratio() * den).to_integer();
                (k as usize <= n_max).then_some((k as usize, c))
            })
            .collect();
        let inv_lead = lead.recip();
        let mut d: Vec<Coeff> = vec![Coeff::zero(); n_max + 1];
        d[0] = inv_lead.clone();
        for n in 1..=n_max {
            let mut acc = Coeff::zero();
            for (k, u) in &rel_terms {
                if *k > n {
                    break;
                }
                let prev = &d[n - k];
                if !prev.is_zero() {
                    acc += *u * prev;
                }
            }
            if !acc.is_zero() {
                d[n] = -(acc * &inv_lead);
            }
        }
        let terms = d
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (FracExp::new(n as i64, den) - v, c))
            .collect();
        Ok(FracSeries { terms, order: out_order })
    }

    /// Integer power; negative powers go through [`FracSeries::invert`].
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = FracSeries::one(base.order - base.effective_valuation());
        let mut sq = base;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { sq.clone() } else { result.mul(&sq) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(result)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// Compares coefficients at every exponent `<= order`.
    pub fn equal_to_order(&self, other: &Self, order: FracExp) -> Result<Verdict> {
        let available = self.order.min(other.order);
        if order > available {
            return Err(Error::OrderTooLarge { requested: order, available });
        }
        let mut a = self.terms.range(..=order).peekable();
        let mut b = other.terms.range(..=order).peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => return Ok(Verdict::Equal),
                (Some((ea, _)), None) => **ea,
                (None, Some((eb, _))) => **eb,
                (Some((ea, _)), Some((eb, _))) => (**ea).min(**eb),
            };
            let ca = self.coeff(next);
            let cb = other.coeff(next);
            if ca != cb {
                return Ok(Verdict::FirstDiscrepancy { exponent: next, lhs: ca, rhs: cb });
            }
            if a.peek().is_some_and(|(e, _)| **e == next) {
                a.next();
            }
            if b.peek().is_some_and(|(e, _)| **e == next) {
                b.next();
            }
        }
    }

    /// True when every stored coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Human-readable form showing at most `max_terms` terms.
    pub fn display_terms(&self, max_terms: usize) -> String {
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().take(max_terms).enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = if e.is_zero() {
                String::new()
            } else if *e == FracExp::ONE {
                "q".to_string()
            } else if e.is_integer() && e.is_positive() {
                format!("q^{e}")
            } else {
                format!("q^({e})")
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        if self.terms.len() > max_terms {
            out.push_str(" + ...");
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if self.order.is_integer() {
            out.push_str(&format!("O(q^{})", self.order + FracExp::ONE));
        } else {
            out.push_str(&format!("O(q^(>{}))", self.order));
        }
        out
    }
}

impl fmt::Display for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_terms(usize::MAX))
    }
}

impl fmt::Debug for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_terms(12))
    }
}

impl Add for &FracSeries {
    type Output = FracSeries;
    fn add(self, rhs: &FracSeries) -> FracSeries {
        FracSeries::add(self, rhs)
    }
}

impl Sub for &FracSeries {
    type Output = FracSeries;
    fn sub(self, rhs: &FracSeries) -> FracSeries {
        FracSeries::sub(self, rhs)
    }
}

impl Mul for &FracSeries {
    type Output = FracSeries;
    fn mul(self, rhs: &FracSeries) -> FracSeries {
        FracSeries::mul(self, rhs)
    }
}

impl Neg for &FracSeries {
    type Output = FracSeries;
    fn neg(self) -> FracSeries {
        FracSeries::neg(self)
    }
}

/// Repeatedly evaluates `f` at a rising working order until the result is
/// known to at least `target`, then truncates to exactly `target`.
///
/// Each retry raises the working order by the observed shortfall, so this
/// converges once the valuations of the intermediate factors are visible.
pub fn expand_to_order<F, E>(target: FracExp, mut f: F) -> std::result::Result<FracSeries, E>
where
    F: FnMut(FracExp) -> std::result::Result<FracSeries, E>,
    E: From<Error>,
{
    let mut working = target;
    let mut best = None;
    for _ in 0..12 {
        let s = f(working)?;
        if s.order() >= target {
            return Ok(s.truncate(target));
        }
        let shortfall = target - s.order();
        best = Some(s.order());
        working += shortfall.max(FracExp::ONE);
    }
    Err(Error::OrderNotReached { wanted: target, reached: best.unwrap_or(target) }.into())
}
