//! Pochhammer products, Jacobi theta functions `j(x; q^M)`, the shorthands
//! `J_{a,m}`, `J̄_{a,m}`, `J_m`, Dedekind eta and restricted Euler products.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quad::Quadratic;
use crate::series::{coeff, Coeff, FracExp, FracSeries, QArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JForm {
    /// Bilateral sum `Σ (-1)^n q^{M n(n-1)/2} x^n`.
    Sum,
    /// Triple product after shifting `x` into `0 < exp <= M`.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JKind {
    /// `J_{a,M} = j(q^a; q^M)`
    Plain,
    /// `J̄_{a,M} = j(-q^a; q^M)`
    Bar,
    /// `J_M = (q^M; q^M)_∞`
    Prod,
}

fn check_modulus(modulus: FracExp) -> Result<()> {
    if modulus.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("theta modulus {modulus} must be positive")))
    }
}

/// `(x; q^M)_∞ = ∏_{i>=0} (1 - q^{Mi} x)` for `x = ±q^e` with `e > 0`.
pub fn pochhammer_inf(x: QArg, modulus: FracExp, order: FracExp) -> Result<FracSeries> {
    check_modulus(modulus)?;
    if !x.exp().is_positive() {
        return Err(Error::NonPositiveExponent { exp: x.exp() });
    }
    let mut s = FracSeries::one(order);
    let mut w = x.exp();
    while w <= order {
        s = s.mul_one_minus(x.sign(), w);
        w += modulus;
    }
    Ok(s)
}

/// `j(x; q^M)` vanishes exactly when `x = +q^{nM}`.
pub fn is_singular(x: QArg, modulus: FracExp) -> bool {
    x.integral_power_of(modulus).is_some()
}

fn sum_exponent(x: QArg, modulus: FracExp) -> Quadratic {
    let half = modulus / FracExp::int(2);
    Quadratic::new(half, x.exp() - half, FracExp::ZERO)
}

/// Least exponent of `j(x; q^M)`, or `None` when it is identically zero.
///
/// At most two indices share the minimal exponent and they never cancel
/// unless `x = +q^{nM}`.
pub fn jtheta_valuation(x: QArg, modulus: FracExp) -> Option<FracExp> {
    if is_singular(x, modulus) {
        None
    } else {
        Some(sum_exponent(x, modulus).min().1)
    }
}

fn jtheta_sum(x: QArg, modulus: FracExp, order: FracExp, alternating_base: bool) -> FracSeries {
    let quad = sum_exponent(x, modulus);
    let mut acc: BTreeMap<FracExp, i64> = BTreeMap::new();
    if let Some((lo, hi)) = quad.range_le(order) {
        for n in lo..=hi {
            let mut negative = n.rem_euclid(2) == 1;
            if x.is_negative() && n.rem_euclid(2) == 1 {
                negative = !negative;
            }
            // (-q^M)^{n(n-1)/2} contributes an extra (-1)^{n(n-1)/2}
            if alternating_base && (n * (n - 1) / 2).rem_euclid(2) == 1 {
                negative = !negative;
            }
            *acc.entry(quad.at(n)).or_insert(0) += if negative { -1 } else { 1 };
        }
    }
    FracSeries::from_terms(acc.into_iter().map(|(e, c)| (e, coeff(c))), order)
}

fn jtheta_product(x: QArg, modulus: FracExp, order: FracExp) -> Result<FracSeries> {
    // x = q^{kM} x' with 0 < exp(x') <= M
    let k = (x.exp() / modulus).ceil() - 1;
    let reduced = x.shift(-modulus.scale(k));
    if is_singular(reduced, modulus) {
        return Ok(FracSeries::zero(order));
    }
    // j(q^{kM} x'; q^M) = (-1)^k q^{-M k(k-1)/2} x'^{-k} j(x'; q^M)
    let pre_exp = -modulus.scale(k * (k - 1)) / FracExp::int(2) - reduced.exp().scale(k);
    let pre_neg = (k.rem_euclid(2) == 1) != (reduced.is_negative() && k.rem_euclid(2) == 1);
    let inner = order - pre_exp;

    let first = pochhammer_inf(reduced, modulus, inner)?;
    let comp = QArg::new(reduced.sign(), modulus - reduced.exp());
    let second = if comp.exp().is_zero() {
        // (1 - comp) (q^M comp; q^M)_∞ with comp = -1
        pochhammer_inf(comp.shift(modulus), modulus, inner)?.scale(&coeff(2))
    } else {
        pochhammer_inf(comp, modulus, inner)?
    };
    let euler = pochhammer_inf(QArg::q(modulus), modulus, inner)?;
    let body = first.mul(&second).mul(&euler);
    Ok(body.mul_monomial(&coeff(if pre_neg { -1 } else { 1 }), pre_exp))
}

/// `j(x; q^M)` to `order`. Singular arguments give the zero series.
pub fn jtheta(x: QArg, modulus: FracExp, form: JForm, order: FracExp) -> Result<FracSeries> {
    check_modulus(modulus)?;
    match form {
        JForm::Sum => Ok(jtheta_sum(x, modulus, order, false)),
        JForm::Product => jtheta_product(x, modulus, order),
    }
}

/// `j(x; q^M)` by the sum form.
pub fn j(x: QArg, modulus: impl Into<FracExp>, order: FracExp) -> FracSeries {
    let modulus = modulus.into();
    assert!(modulus.is_positive());
    jtheta_sum(x, modulus, order, false)
}

/// `j(x; -q^M)`, the theta function with a negated base.
pub fn jtheta_neg_base(x: QArg, modulus: FracExp, order: FracExp) -> Result<FracSeries> {
    check_modulus(modulus)?;
    Ok(jtheta_sum(x, modulus, order, true))
}

/// `J_m = ∏_{i>=1} (1 - q^{mi})`.
pub fn euler(m: i64, order: FracExp) -> FracSeries {
    assert!(m >= 1);
    let m = FracExp::int(m);
    pochhammer_inf(QArg::q(m), m, order).expect("positive exponent")
}

pub fn big_j(kind: JKind, a: i64, m: i64, order: FracExp) -> Result<FracSeries> {
    if m < 1 {
        return Err(Error::InvalidInput(format!("J modulus {m} must be positive")));
    }
    Ok(match kind {
        JKind::Plain => j(QArg::q(a), m, order),
        JKind::Bar => j(QArg::neg_q(a), m, order),
        JKind::Prod => euler(m, order),
    })
}

/// `η(kτ) = q^{k/24} ∏ (1 - q^{kn})`.
pub fn eta(k: i64, order: FracExp) -> Result<FracSeries> {
    if k < 1 {
        return Err(Error::InvalidInput(format!("eta argument {k} must be positive")));
    }
    let lead = FracExp::new(k, 24);
    Ok(euler(k, order - lead).mul_monomial(&coeff(1), lead))
}

/// `∏_{n>=1, n mod modulus ∉ excluded} (1 - q^{step n})^power`.
pub fn restricted_product(
    step: i64,
    modulus: i64,
    excluded: &[i64],
    power: i64,
    order: FracExp,
) -> Result<FracSeries> {
    if step < 1 || modulus < 1 || power == 0 {
        return Err(Error::InvalidInput(format!(
            "restricted product needs step, modulus >= 1 and power != 0 (got {step}, {modulus}, {power})"
        )));
    }
    let mut s = FracSeries::one(order);
    let mut n = 1;
    loop {
        let w = FracExp::int(step * n);
        if w > order {
            break;
        }
        if !excluded.iter().any(|r| r.rem_euclid(modulus) == n % modulus) {
            for _ in 0..power.unsigned_abs() {
                s = if power > 0 { s.mul_one_minus(1, w) } else { s.div_one_minus(1, w) };
            }
        }
        n += 1;
    }
    Ok(s)
}

/// One factor of a theta quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaFactor {
    /// `j(x; q^M)`
    J { x: QArg, modulus: FracExp },
    /// `J_M = (q^M; q^M)_∞`
    Euler(FracExp),
}

impl ThetaFactor {
    pub fn j(x: QArg, modulus: impl Into<FracExp>) -> Self {
        ThetaFactor::J { x, modulus: modulus.into() }
    }

    pub fn euler(modulus: impl Into<FracExp>) -> Self {
        ThetaFactor::Euler(modulus.into())
    }

    fn valuation(&self) -> Option<FracExp> {
        match *self {
            ThetaFactor::J { x, modulus } => jtheta_valuation(x, modulus),
            ThetaFactor::Euler(_) => Some(FracExp::ZERO),
        }
    }

    fn expand(&self, order: FracExp) -> FracSeries {
        match *self {
            ThetaFactor::J { x, modulus } => jtheta_sum(x, modulus, order, false),
            ThetaFactor::Euler(m) => pochhammer_inf(QArg::q(m), m, order).expect("positive modulus"),
        }
    }

    fn describe(&self) -> String {
        match self {
            ThetaFactor::J { x, modulus } => format!("j({x}; q^{modulus})"),
            ThetaFactor::Euler(m) => format!("J_{m}"),
        }
    }
}

/// `c * prefactor * ∏ num / ∏ den` for theta factors, expanded to an exact
/// target order using the closed-form valuations of each factor.
#[derive(Debug, Clone)]
pub struct ThetaQuotient {
    pub coeff: Coeff,
    pub prefactor: QArg,
    pub num: Vec<(ThetaFactor, u32)>,
    pub den: Vec<(ThetaFactor, u32)>,
}

impl ThetaQuotient {
    pub fn new(coeff: Coeff, prefactor: QArg) -> Self {
        ThetaQuotient { coeff, prefactor, num: Vec::new(), den: Vec::new() }
    }

    pub fn times(mut self, f: ThetaFactor, power: u32) -> Self {
        self.num.push((f, power));
        self
    }

    pub fn over(mut self, f: ThetaFactor, power: u32) -> Self {
        self.den.push((f, power));
        self
    }

    /// Error if a denominator vanishes identically.
    pub fn check(&self) -> Result<()> {
        for (f, _) in &self.den {
            if f.valuation().is_none() {
                return Err(Error::SingularSpec(format!("{} vanishes in a denominator", f.describe())));
            }
        }
        Ok(())
    }

    pub fn expand(&self, order: FracExp) -> Result<FracSeries> {
        self.check()?;
        if self.coeff.is_zero() || self.num.iter().any(|(f, p)| *p > 0 && f.valuation().is_none()) {
            return Ok(FracSeries::zero(order));
        }
        let mut total = self.prefactor.exp();
        for (f, p) in &self.num {
            total += f.valuation().unwrap().scale(*p as i64);
        }
        for (f, p) in &self.den {
            total -= f.valuation().unwrap().scale(*p as i64);
        }
        if total > order {
            return Ok(FracSeries::zero(order));
        }
        let sign = coeff(self.prefactor.sign() as i64) * &self.coeff;
        let mut acc = FracSeries::one(order - total + FracExp::ONE);
        for (f, p) in &self.num {
            let v = f.valuation().unwrap();
            let s = f.expand(order - total + v);
            acc = acc.mul(&s.pow(*p as i64)?);
        }
        for (f, p) in &self.den {
            let v = f.valuation().unwrap();
            let s = f.expand(order - total + v);
            acc = acc.mul(&s.pow(-(*p as i64))?);
        }
        let out = acc.mul_monomial(&sign, self.prefactor.exp());
        debug_assert!(out.order() >= order, "{} < {}", out.order(), order);
        Ok(out.truncate(order))
    }
}
