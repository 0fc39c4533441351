//! The Appell–Lerch function
//!
//! ```text
//! m(x, q, z) = 1/j(z; q) * Σ_r (-1)^r q^{r(r-1)/2} z^r / (1 - q^{r-1} x z)
//! ```
//!
//! evaluated with base `q^M` at signed rational powers of `q`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quad::Quadratic;
use crate::series::{coeff, coeff_frac, FracExp, FracSeries, QArg};
use crate::theta::{is_singular, j, jtheta_valuation, ThetaFactor, ThetaQuotient};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AppellSpec {
    pub x: QArg,
    pub modulus: FracExp,
    pub z: QArg,
}

impl AppellSpec {
    pub fn new(x: QArg, modulus: impl Into<FracExp>, z: QArg) -> Self {
        AppellSpec { x, modulus: modulus.into(), z }
    }

    /// `z` and `xz` must not be integral powers of `q^M`.
    pub fn validate(&self) -> Result<()> {
        if !self.modulus.is_positive() {
            return Err(Error::InvalidInput(format!(
                "Appell-Lerch modulus {} must be positive",
                self.modulus
            )));
        }
        if is_singular(self.z, self.modulus) {
            return Err(Error::SingularSpec(format!(
                "m({}, q^{}, {}): j(z) vanishes",
                self.x, self.modulus, self.z
            )));
        }
        if is_singular(self.x * self.z, self.modulus) {
            return Err(Error::SingularSpec(format!(
                "m({}, q^{}, {}): xz is a power of the base, so one term has a pole",
                self.x, self.modulus, self.z
            )));
        }
        Ok(())
    }

    /// `r`-th numerator exponent `M r(r-1)/2 + r e_z`; it bounds the term from below.
    fn numerator(&self) -> Quadratic {
        let half = self.modulus / FracExp::int(2);
        Quadratic::new(half, self.z.exp() - half, FracExp::ZERO)
    }

    /// The bilateral sum without the `1/j(z)` prefactor, exact to `order`.
    fn lerch_sum(&self, order: FracExp) -> FracSeries {
        let num = self.numerator();
        let sigma = self.x.sign() * self.z.sign();
        // Doubled integer coefficients, so the w = 0 term 1/2 stays integral.
        let mut acc: BTreeMap<FracExp, i64> = BTreeMap::new();
        let Some((lo, hi)) = num.range_le(order) else {
            return FracSeries::zero(order);
        };
        for r in lo..=hi {
            let h = num.at(r);
            let odd_r = r.rem_euclid(2) == 1;
            let lead: i64 = if odd_r != (self.z.is_negative() && odd_r) { -2 } else { 2 };
            let w = self.modulus.scale(r - 1) + self.x.exp() + self.z.exp();
            if w.is_zero() {
                // sigma = -1 here; +1 is rejected by validate
                *acc.entry(h).or_insert(0) += lead / 2;
                continue;
            }
            // 1/(1 - σq^w) = Σ_{k>=0} σ^k q^{wk}, or -Σ_{k>=1} σ^k q^{|w|k} when w < 0
            let (mut k, step, outer) = if w.is_positive() { (0, w, 1) } else { (1, -w, -1) };
            loop {
                let e = h + step.scale(k);
                if e > order {
                    break;
                }
                let s = if sigma < 0 && k % 2 == 1 { -1 } else { 1 };
                *acc.entry(e).or_insert(0) += outer * s * lead;
                k += 1;
            }
        }
        FracSeries::from_terms(acc.into_iter().map(|(e, c)| (e, coeff_frac(c, 2))), order)
    }
}

/// `m(x, q^M, z)` exact to `order`.
pub fn appell_m(spec: &AppellSpec, order: FracExp) -> Result<FracSeries> {
    spec.validate()?;
    let vz = jtheta_valuation(spec.z, spec.modulus).expect("validated");
    let sum_order = order + vz;
    let sum = spec.lerch_sum(sum_order);
    if sum.is_zero() {
        return Ok(FracSeries::zero(order));
    }
    let lower = spec.numerator().min().1;
    let jz = j(spec.z, spec.modulus, order - lower + vz + vz);
    let out = sum.mul(&jz.invert()?);
    debug_assert!(out.order() >= order);
    Ok(out.truncate(order))
}

/// Convenience wrapper for `m(x, q^M, z)`.
pub fn m(x: QArg, modulus: impl Into<FracExp>, z: QArg, order: FracExp) -> Result<FracSeries> {
    appell_m(&AppellSpec::new(x, modulus, z), order)
}

/// Theta quotient for `m(x, q^M, z1) - m(x, q^M, z0)`:
///
/// ```text
/// z0 J_M^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1))
/// ```
pub fn changing_z_quotient(x: QArg, modulus: FracExp, z0: QArg, z1: QArg) -> Result<ThetaQuotient> {
    AppellSpec::new(x, modulus, z0).validate()?;
    AppellSpec::new(x, modulus, z1).validate()?;
    let q = ThetaQuotient::new(coeff(1), z0)
        .times(ThetaFactor::euler(modulus), 3)
        .times(ThetaFactor::j(z1 * z0.inv(), modulus), 1)
        .times(ThetaFactor::j(x * z0 * z1, modulus), 1)
        .over(ThetaFactor::j(z0, modulus), 1)
        .over(ThetaFactor::j(z1, modulus), 1)
        .over(ThetaFactor::j(x * z0, modulus), 1)
        .over(ThetaFactor::j(x * z1, modulus), 1);
    q.check()?;
    Ok(q)
}

pub fn changing_z_correction(
    x: QArg,
    modulus: impl Into<FracExp>,
    z0: QArg,
    z1: QArg,
    order: FracExp,
) -> Result<FracSeries> {
    changing_z_quotient(x, modulus.into(), z0, z1)?.expand(order)
}
