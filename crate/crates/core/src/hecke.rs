//! Hecke-type double sums
//!
//! ```text
//! f_{a,b,c}(x, y, q) = (Σ_{r,s>=0} - Σ_{r,s<0}) (-1)^{r+s} x^r y^s q^{a C(r,2) + b r s + c C(s,2)}
//! ```
//!
//! by direct enumeration, their functional equations, and the two closed-form
//! expansions in terms of Appell–Lerch sums and theta quotients.

use std::collections::BTreeMap;

use crate::appell::{appell_m, AppellSpec};
use crate::error::{Error, Result};
use crate::quad::Quadratic;
use crate::series::{coeff, FracExp, FracSeries, QArg};
use crate::theta::{j, jtheta_valuation, ThetaFactor, ThetaQuotient};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleSumParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x: QArg,
    pub y: QArg,
}

impl DoubleSumParams {
    pub fn new(a: i64, b: i64, c: i64, x: QArg, y: QArg) -> Self {
        DoubleSumParams { a, b, c, x, y }
    }

    pub fn with_args(&self, x: QArg, y: QArg) -> Self {
        DoubleSumParams { x, y, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a < 1 || self.b < 1 || self.c < 1 {
            return Err(Error::InvalidInput(format!(
                "f_{{{},{},{}}} needs a, b, c >= 1",
                self.a, self.b, self.c
            )));
        }
        Ok(())
    }

    /// `b^2 > ac`, the indefinite case.
    pub fn is_indefinite(&self) -> bool {
        self.b * self.b > self.a * self.c
    }

    /// Exponent `a C(r,2) + b r s + c C(s,2) + r e_x + s e_y`.
    pub fn exponent(&self, r: i64, s: i64) -> FracExp {
        let quad = FracExp::int(self.a * r * (r - 1) / 2 + self.b * r * s + self.c * s * (s - 1) / 2);
        quad + self.x.exp().scale(r) + self.y.exp().scale(s)
    }

    /// `(-1)^{r+s} sgn(x)^r sgn(y)^s` as ±1.
    pub fn sign(&self, r: i64, s: i64) -> i64 {
        let mut odd = (r + s).rem_euclid(2) == 1;
        if self.x.is_negative() && r.rem_euclid(2) == 1 {
            odd = !odd;
        }
        if self.y.is_negative() && s.rem_euclid(2) == 1 {
            odd = !odd;
        }
        if odd {
            -1
        } else {
            1
        }
    }
}

fn half(n: i64) -> FracExp {
    FracExp::new(n, 2)
}

/// `n C(k,2) + k e` as a quadratic in `k`.
fn one_dim(n: i64, e: FracExp) -> Quadratic {
    Quadratic::new(half(n), e - half(n), FracExp::ZERO)
}

/// Minimum of a convex quadratic over the integers in `[lo, hi]` (either end open).
fn min_on(q: &Quadratic, lo: Option<i64>, hi: Option<i64>) -> FracExp {
    let (arg, _) = q.min();
    let clamped = match (lo, hi) {
        (Some(l), _) if arg < l => l,
        (_, Some(h)) if arg > h => h,
        _ => arg,
    };
    q.at(clamped)
}

/// Every `(r, s)` in one quadrant whose exponent is `<= order`.
fn quadrant(p: &DoubleSumParams, order: FracExp, positive: bool, out: &mut BTreeMap<FracExp, i64>) {
    let qr = one_dim(p.a, p.x.exp());
    let qs = one_dim(p.c, p.y.exp());
    let (lo, hi) = if positive { (Some(0), None) } else { (None, Some(-1)) };
    // b r s >= 0 in both quadrants, so the separable parts bound the exponent.
    let s_floor = min_on(&qs, lo, hi);
    let Some((r_lo, r_hi)) = qr.range_le(order - s_floor) else {
        return;
    };
    let (r_lo, r_hi) = if positive { (r_lo.max(0), r_hi) } else { (r_lo, r_hi.min(-1)) };
    let outer = if positive { 1 } else { -1 };
    for r in r_lo..=r_hi {
        let base = qr.at(r);
        let in_s = Quadratic::new(half(p.c), p.y.exp() - half(p.c) + FracExp::int(p.b * r), base);
        let Some((s_lo, s_hi)) = in_s.range_le(order) else {
            continue;
        };
        let (s_lo, s_hi) = if positive { (s_lo.max(0), s_hi) } else { (s_lo, s_hi.min(-1)) };
        for s in s_lo..=s_hi {
            *out.entry(in_s.at(s)).or_insert(0) += outer * p.sign(r, s);
        }
    }
}

/// `f_{a,b,c}(x, y, q)` exact to `order`.
pub fn hecke_f(p: &DoubleSumParams, order: FracExp) -> Result<FracSeries> {
    p.validate()?;
    let mut acc = BTreeMap::new();
    quadrant(p, order, true, &mut acc);
    quadrant(p, order, false, &mut acc);
    Ok(FracSeries::from_terms(acc.into_iter().map(|(e, c)| (e, coeff(c))), order))
}

/// `c * q^e * j(x; q^M)` exact to `order`.
fn mono_j(prefactor: QArg, x: QArg, modulus: i64, order: FracExp) -> FracSeries {
    j(x, modulus, order - prefactor.exp()).mul_qarg(prefactor)
}

/// Right-hand side of the `(R, S)` shift functional equation.
pub fn f_shift_rhs(p: &DoubleSumParams, r_shift: i64, s_shift: i64, order: FracExp) -> Result<FracSeries> {
    p.validate()?;
    let (a, b, c) = (p.a, p.b, p.c);
    let (rr, ss) = (r_shift, s_shift);
    let pre = (-p.x).pow(rr)
        * (-p.y).pow(ss)
        * QArg::q(a * rr * (rr - 1) / 2 + b * rr * ss + c * ss * (ss - 1) / 2);
    let shifted = p.with_args(p.x.shift(a * rr + b * ss), p.y.shift(b * rr + c * ss));
    let mut total = hecke_f(&shifted, order - pre.exp())?.mul_qarg(pre);

    // Σ_{m=0}^{R-1} with Σ_{m=0}^{R-1} := -Σ_{m=R}^{-1} for R < 0
    let conv = |n: i64| -> (std::ops::Range<i64>, bool) {
        if n >= 0 {
            (0..n, false)
        } else {
            (n..0, true)
        }
    };
    let (range, flip) = conv(rr);
    for m in range {
        let term = mono_j((-p.x).pow(m) * QArg::q(a * m * (m - 1) / 2), p.y.shift(m * b), c, order);
        total = if flip { total.sub(&term) } else { total.add(&term) };
    }
    let (range, flip) = conv(ss);
    for m in range {
        let term = mono_j((-p.y).pow(m) * QArg::q(c * m * (m - 1) / 2), p.x.shift(m * b), a, order);
        total = if flip { total.sub(&term) } else { total.add(&term) };
    }
    Ok(total)
}

/// `-y f(q^b x, q^c y) + j(x; q^a)`.
pub fn fnq1_rhs(p: &DoubleSumParams, order: FracExp) -> Result<FracSeries> {
    let pre = -p.y;
    let inner = hecke_f(&p.with_args(p.x.shift(p.b), p.y.shift(p.c)), order - pre.exp())?;
    Ok(inner.mul_qarg(pre).add(&j(p.x, p.a, order)))
}

/// `-x f(q^a x, q^b y) + j(y; q^c)`.
pub fn fnq2_rhs(p: &DoubleSumParams, order: FracExp) -> Result<FracSeries> {
    let pre = -p.x;
    let inner = hecke_f(&p.with_args(p.x.shift(p.a), p.y.shift(p.b)), order - pre.exp())?;
    Ok(inner.mul_qarg(pre).add(&j(p.y, p.c, order)))
}

/// `-(q^{a+b+c} / (xy)) f(q^{2a+b}/x, q^{2c+b}/y)`.
pub fn f_flip_rhs(p: &DoubleSumParams, order: FracExp) -> Result<FracSeries> {
    let pre = -(QArg::q(p.a + p.b + p.c) * p.x.inv() * p.y.inv());
    let flipped = p.with_args(p.x.inv().shift(2 * p.a + p.b), p.y.inv().shift(2 * p.c + p.b));
    Ok(hecke_f(&flipped, order - pre.exp())?.mul_qarg(pre))
}

/// Lower bound for the valuation of `m(x, q^M, z)`.
fn appell_lower_bound(spec: &AppellSpec) -> FracExp {
    let half_m = spec.modulus / FracExp::int(2);
    let num = Quadratic::new(half_m, spec.z.exp() - half_m, FracExp::ZERO);
    num.min().1 - jtheta_valuation(spec.z, spec.modulus).expect("validated spec")
}

/// `j(x; q^M) * m(spec)` exact to `order`, skipping `m` when `j` vanishes.
fn j_times_m(x: QArg, modulus: FracExp, spec: &AppellSpec, order: FracExp) -> Result<FracSeries> {
    spec.validate()?;
    let Some(vj) = jtheta_valuation(x, modulus) else {
        return Ok(FracSeries::zero(order));
    };
    let theta = crate::theta::jtheta(x, modulus, crate::theta::JForm::Sum, order - appell_lower_bound(spec))?;
    let lerch = appell_m(spec, order - vj)?;
    Ok(theta.mul(&lerch).truncate(order))
}

/// `g_{1,b,1}(x, y, q, z1, z0)`:
///
/// ```text
/// j(y; q) m(q^{C(b+1,2)-1} x (-y)^{-b}, q^{b^2-1}, z1) + j(x; q) m(q^{C(b+1,2)-1} y (-x)^{-b}, q^{b^2-1}, z0)
/// ```
///
/// Both Appell–Lerch arguments are checked even where the theta factor vanishes.
pub fn g_1b1(x: QArg, y: QArg, b: i64, z1: QArg, z0: QArg, order: FracExp) -> Result<FracSeries> {
    if b < 2 {
        return Err(Error::InvalidInput(format!("g_{{1,b,1}} needs b >= 2, got {b}")));
    }
    let shift = b * (b + 1) / 2 - 1;
    let modulus = FracExp::int(b * b - 1);
    let first = AppellSpec::new(x * (-y).pow(-b) * QArg::q(shift), modulus, z1);
    let second = AppellSpec::new(y * (-x).pow(-b) * QArg::q(shift), modulus, z0);
    first.validate()?;
    second.validate()?;
    let one = FracExp::ONE;
    Ok(j_times_m(y, one, &first, order)?.add(&j_times_m(x, one, &second, order)?))
}

/// The `p^2` theta quotients in the expansion of `f_{1,p+1,1}`, each already
/// divided by `J̄_{0,p(2+p)}`.
pub fn theta_p_terms(p: i64, x: QArg, y: QArg) -> Result<Vec<ThetaQuotient>> {
    if p < 1 {
        return Err(Error::InvalidInput(format!("θ_p needs p >= 1, got {p}")));
    }
    let big = p * p * (2 + p);
    let mut out = Vec::new();
    for r in 0..p {
        for s in 0..p {
            let pre = QArg::q(r * (r - 1) / 2 + (1 + p) * r * (s + 1) + (s + 1) * s / 2)
                * (-x).pow(r)
                * (-y).pow(s + 1);
            let quo = ThetaQuotient::new(coeff(1), pre)
                .times(ThetaFactor::euler(big), 3)
                .times(ThetaFactor::j(-(x * y.inv()).shift(p * (s - r)), p * p), 1)
                .times(ThetaFactor::j((x * y).pow(p).shift(p * (2 + p) * (r + s) + p * (1 + p)), big), 1)
                .over(
                    ThetaFactor::j((-y).pow(1 + p) * (-x).inv() * QArg::q(FracExp::new(p * (2 + p) * r * 2 + p * (1 + p), 2)), big),
                    1,
                )
                .over(
                    ThetaFactor::j((-x).pow(1 + p) * (-y).inv() * QArg::q(FracExp::new(p * (2 + p) * s * 2 + p * (1 + p), 2)), big),
                    1,
                )
                .over(ThetaFactor::j(QArg::MINUS_ONE, p * (2 + p)), 1);
            quo.check()?;
            out.push(quo);
        }
    }
    Ok(out)
}

/// `f_{1,p+1,1}(x, y, q) = g_{1,p+1,1}(x, y, q, -1, -1) + θ_p(x, y, q) / J̄_{0,p(2+p)}`.
pub fn f1p1_expansion(p: i64, x: QArg, y: QArg, order: FracExp) -> Result<FracSeries> {
    let terms = theta_p_terms(p, x, y)?;
    let mut total = g_1b1(x, y, p + 1, QArg::MINUS_ONE, QArg::MINUS_ONE, order)?;
    for t in &terms {
        total = total.add(&t.expand(order)?);
    }
    Ok(total)
}

/// `h_{n,n,1}(x, y, q, z1, z0)`:
///
/// ```text
/// j(x; q^n) m(-q^{n-1} y/x, q^{n-1}, z1) + j(y; q) m(q^{C(n,2)} x (-y)^{-n}, q^{n^2-n}, z0)
/// ```
pub fn h_nn1(n: i64, x: QArg, y: QArg, z1: QArg, z0: QArg, order: FracExp) -> Result<FracSeries> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("h_{{n,n,1}} needs n >= 2, got {n}")));
    }
    let first = AppellSpec::new(-(y * x.inv()).shift(n - 1), n - 1, z1);
    let second = AppellSpec::new(x * (-y).pow(-n) * QArg::q(n * (n - 1) / 2), n * n - n, z0);
    first.validate()?;
    second.validate()?;
    Ok(j_times_m(x, FracExp::int(n), &first, order)?.add(&j_times_m(y, FracExp::ONE, &second, order)?))
}

/// The `n` theta quotients of `θ_n`, each divided by `J̄_{0,n-1} J̄_{0,n^2-n}`.
pub fn theta_n_terms(n: i64, x: QArg, y: QArg) -> Result<Vec<ThetaQuotient>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("θ_n needs n >= 2, got {n}")));
    }
    let nn = n * (n - 1);
    let mut out = Vec::new();
    for d in 0..n {
        let k = (n - 1) * (d + 1);
        let quo = ThetaQuotient::new(coeff(1), QArg::q((n - 1) * d * (d + 1) / 2))
            .times(ThetaFactor::j(y.shift(k), n), 1)
            .times(ThetaFactor::j(-(x * y.inv()).shift(nn - k), nn), 1)
            .times(ThetaFactor::euler(nn), 3)
            .times(ThetaFactor::j((-y).pow(1 - n).shift(n * (n - 1) / 2 + k), nn), 1)
            .over(ThetaFactor::j(-(x * (-y).pow(-n)).shift(n * (n - 1) / 2), nn), 1)
            .over(ThetaFactor::j((y * x.inv()).shift(k), nn), 1)
            .over(ThetaFactor::j(QArg::MINUS_ONE, n - 1), 1)
            .over(ThetaFactor::j(QArg::MINUS_ONE, nn), 1);
        quo.check()?;
        out.push(quo);
    }
    Ok(out)
}

/// `f_{n,n,1}(x, y, q) = h_{n,n,1}(x, y, q, -1, -1) - θ_n(x, y, q) / (J̄_{0,n-1} J̄_{0,n^2-n})`.
pub fn fnn1_expansion(n: i64, x: QArg, y: QArg, order: FracExp) -> Result<FracSeries> {
    let terms = theta_n_terms(n, x, y)?;
    let mut total = h_nn1(n, x, y, QArg::MINUS_ONE, QArg::MINUS_ONE, order)?;
    for t in &terms {
        total = total.sub(&t.expand(order)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::m;
    use crate::theta::{big_j, euler, JKind};

    fn o(n: i64) -> FracExp {
        FracExp::int(n)
    }

    fn f(a: i64, b: i64, c: i64, x: QArg, y: QArg, order: i64) -> FracSeries {
        hecke_f(&DoubleSumParams::new(a, b, c, x, y), o(order)).unwrap()
    }

    /// Naive enumeration over a fixed box, keeping exponents <= order.
    fn brute(p: &DoubleSumParams, order: i64, radius: i64) -> FracSeries {
        let mut terms = Vec::new();
        for r in -radius..=radius {
            for s in -radius..=radius {
                let sg = if r >= 0 && s >= 0 {
                    1
                } else if r < 0 && s < 0 {
                    -1
                } else {
                    continue;
                };
                terms.push((p.exponent(r, s), coeff(sg * p.sign(r, s))));
            }
        }
        FracSeries::from_terms(terms, o(order))
    }

    #[test]
    fn enumeration_matches_box_oracle() {
        for p in [
            DoubleSumParams::new(1, 2, 1, QArg::q(1), QArg::q(1)),
            DoubleSumParams::new(3, 3, 1, QArg::neg_q(2), QArg::q(0)),
            DoubleSumParams::new(1, 5, 1, QArg::q(FracExp::new(-3, 2)), QArg::neg_q(FracExp::new(5, 2))),
            DoubleSumParams::new(6, 6, 1, QArg::q(-4), QArg::q(3)),
        ] {
            let got = hecke_f(&p, o(25)).unwrap();
            assert_eq!(got, brute(&p, 25, 60), "{p:?}");
        }
    }

    #[test]
    fn golden_double_sums() {
        let j1 = euler(1, o(60));
        assert!(f(1, 2, 1, QArg::q(1), QArg::q(1), 60).equal_to_order(&j1.mul(&j1), o(60)).unwrap().is_equal());
        let j1j2 = j1.mul(&euler(2, o(60)));
        assert!(f(2, 2, 1, QArg::q(2), QArg::q(1), 60).equal_to_order(&j1j2, o(60)).unwrap().is_equal());
        let c = f(1, 7, 1, QArg::neg_q(FracExp::new(1, 2)), QArg::q(3), 10);
        assert_eq!(c.coeff(o(0)), coeff(1));
    }

    #[test]
    fn shift_examples() {
        for (p, rr, ss) in [
            (DoubleSumParams::new(1, 3, 1, QArg::q(1), QArg::q(1)), 1, 0),
            (DoubleSumParams::new(1, 3, 1, QArg::q(2), QArg::q(1)), 1, -1),
            (DoubleSumParams::new(2, 3, 1, QArg::neg_q(1), QArg::q(FracExp::new(1, 2))), -2, 2),
        ] {
            let lhs = hecke_f(&p, o(40)).unwrap();
            let rhs = f_shift_rhs(&p, rr, ss, o(40)).unwrap();
            assert!(lhs.equal_to_order(&rhs, o(40)).unwrap().is_equal(), "{p:?} {rr} {ss}");
        }
        let p = DoubleSumParams::new(1, 3, 1, QArg::q(1), QArg::q(1));
        assert_eq!(f_shift_rhs(&p, 0, 0, o(20)).unwrap(), hecke_f(&p, o(20)).unwrap());
    }

    #[test]
    fn flip_and_special_shifts() {
        for p in [
            DoubleSumParams::new(1, 2, 1, QArg::q(1), QArg::q(1)),
            DoubleSumParams::new(4, 4, 1, QArg::neg_q(3), QArg::q(1)),
            DoubleSumParams::new(6, 6, 1, QArg::q(6), QArg::q(4)),
        ] {
            let lhs = hecke_f(&p, o(40)).unwrap();
            for rhs in [f_flip_rhs(&p, o(40)), fnq1_rhs(&p, o(40)), fnq2_rhs(&p, o(40))] {
                assert!(lhs.equal_to_order(&rhs.unwrap(), o(40)).unwrap().is_equal(), "{p:?}");
            }
        }
    }

    #[test]
    fn g_examples() {
        let z = QArg::MINUS_ONE;
        assert!(g_1b1(QArg::q(1), QArg::q(1), 2, z, z, o(30)).unwrap().is_zero());
        // j(-q; q) m(q, q^3, -1), the second theta factor j(q; q) vanishes
        let got = g_1b1(QArg::q(1), QArg::neg_q(1), 2, z, z, o(30)).unwrap();
        let expect = j(QArg::neg_q(1), 1, o(40)).mul(&m(QArg::q(1), 3, z, o(40)).unwrap());
        assert!(got.equal_to_order(&expect, o(30)).unwrap().is_equal());
        // assembled by hand for x = q^2, y = q^3: arguments q^2 * q^{-6} * q^2 and q^3 * q^{-4} * q^2
        let got = g_1b1(QArg::q(2), QArg::q(3), 2, z, z, o(20)).unwrap();
        let w = o(60);
        let expect = j(QArg::q(3), 1, w)
            .mul(&m(QArg::q(-2), 3, z, w).unwrap())
            .add(&j(QArg::q(2), 1, w).mul(&m(QArg::q(1), 3, z, w).unwrap()));
        assert!(got.equal_to_order(&expect, o(20)).unwrap().is_equal());
    }

    #[test]
    fn phi_lerch() {
        let lhs = f(1, 2, 1, QArg::q(1), QArg::neg_q(1), 40);
        let rhs = big_j(JKind::Bar, 1, 4, o(40))
            .unwrap()
            .scale(&coeff(2))
            .mul(&m(QArg::q(1), 3, QArg::MINUS_ONE, o(40)).unwrap());
        assert!(lhs.equal_to_order(&rhs, o(40)).unwrap().is_equal());
        let exp = f1p1_expansion(1, QArg::q(1), QArg::neg_q(1), o(40)).unwrap();
        assert!(exp.equal_to_order(&rhs, o(40)).unwrap().is_equal());
    }

    #[test]
    fn f1p1_examples() {
        let j1 = euler(1, o(40));
        let e = f1p1_expansion(1, QArg::q(1), QArg::q(1), o(40)).unwrap();
        assert!(e.equal_to_order(&j1.mul(&j1), o(40)).unwrap().is_equal());
        let e = f1p1_expansion(2, QArg::q(2), QArg::q(3), o(30)).unwrap();
        let d = f(1, 3, 1, QArg::q(2), QArg::q(3), 30);
        assert!(e.equal_to_order(&d, o(30)).unwrap().is_equal());
    }

    #[test]
    fn h_examples() {
        let z = QArg::MINUS_ONE;
        assert!(h_nn1(6, QArg::q(6), QArg::q(4), z, z, o(30)).unwrap().is_zero());
        assert!(h_nn1(4, QArg::q(4), QArg::q(3), z, z, o(30)).unwrap().is_zero());
        // n = 2: -q y/x times z1 = -1 is +1 at x = q^3, y = q^2, a pole
        assert!(matches!(h_nn1(2, QArg::q(3), QArg::q(2), z, z, o(20)), Err(Error::SingularSpec(_))));
        // x = q^3, y = -q^2: the Appell arguments are m(1, q, -1) and m(1, q^2, -1)
        let got = h_nn1(2, QArg::q(3), QArg::neg_q(2), z, z, o(20)).unwrap();
        let w = o(60);
        let expect = j(QArg::q(3), 2, w)
            .mul(&m(QArg::ONE, 1, z, w).unwrap())
            .add(&j(QArg::neg_q(2), 1, w).mul(&m(QArg::ONE, 2, z, w).unwrap()));
        assert!(got.equal_to_order(&expect, o(20)).unwrap().is_equal());
    }

    #[test]
    fn fnn1_examples() {
        let n = o(50);
        let lhs = fnn1_expansion(5, QArg::q(5), QArg::q(4), n).unwrap();
        let rhs = euler(2, n).mul(&euler(10, n));
        assert!(lhs.equal_to_order(&rhs, n).unwrap().is_equal());
        let lhs = fnn1_expansion(6, QArg::q(6), QArg::q(4), n).unwrap();
        let rhs = j(QArg::q(4), 10, n).mul(&j(QArg::q(3), 15, n));
        assert!(lhs.equal_to_order(&rhs, n).unwrap().is_equal());
        let lhs = fnn1_expansion(3, QArg::neg_q(2), QArg::q(1), o(30)).unwrap();
        let rhs = f(3, 3, 1, QArg::neg_q(2), QArg::q(1), 30);
        assert!(lhs.equal_to_order(&rhs, o(30)).unwrap().is_equal());
    }

    #[test]
    fn singular_expansion_is_reported() {
        let r = fnn1_expansion(2, QArg::q(2), QArg::q(1), o(10));
        assert!(matches!(r, Err(Error::SingularSpec(_))), "{r:?}");
    }
}
