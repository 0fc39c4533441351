//! String functions `C^N_{m,ℓ}` of A₁⁽¹⁾ at level `N`.
//!
//! Three independent evaluations are provided: the Weyl–Kac triple sum, the
//! Hecke-type double sum `f_{1,1+N,1}`, and the Kac–Peterson indefinite
//! lattice sum. The splitting identities for even level `N = 2K` are built on
//! `f_{K+1,K+1,1}`.
//!
//! Note on the exponent: the leading power is
//! `s(m,ℓ,N) = -1/8 + (ℓ+1)^2/(4(N+2)) - m^2/(4N)`. A variant with `-m^2/4`
//! circulates; it disagrees with every tabulated level-2 expansion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::{hecke_f, DoubleSumParams};
use crate::quad::Quadratic;
use crate::series::{coeff, FracExp, FracSeries, QArg};
use crate::theta::euler;

/// `(N, m, ℓ)` with `0 <= ℓ <= N` and `m ≡ ℓ (mod 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StringIndex {
    pub n: i64,
    pub m: i64,
    pub l: i64,
}

impl StringIndex {
    pub fn new(n: i64, m: i64, l: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput(format!("level {n} must be positive")));
        }
        if !(0..=n).contains(&l) {
            return Err(Error::InvalidInput(format!("ℓ = {l} must lie in [0, {n}]")));
        }
        if (m - l).rem_euclid(2) != 0 {
            return Err(Error::InvalidInput(format!("m = {m} and ℓ = {l} must have the same parity")));
        }
        Ok(StringIndex { n, m, l })
    }

    /// Reduces `m` into `[0, N]` with `m -> m mod 2N` then `m -> 2N - m`.
    pub fn canonical(&self) -> Self {
        let two_n = 2 * self.n;
        let mut m = self.m.rem_euclid(two_n);
        if m > self.n {
            m = two_n - m;
        }
        StringIndex { m, ..*self }
    }
}

impl fmt::Display for StringIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.m, self.l)
    }
}

/// `-1/8 + (ℓ+1)^2/(4(N+2)) - m^2/(4N)`.
pub fn s_exponent(idx: &StringIndex) -> FracExp {
    let (n, m, l) = (idx.n, idx.m, idx.l);
    FracExp::new(-1, 8) + FracExp::new((l + 1) * (l + 1), 4 * (n + 2)) - FracExp::new(m * m, 4 * n)
}

/// `q^lead * sum / J_1^3` exact to `order`, where `sum` is exact to `order - lead`.
fn over_j1_cubed(lead: FracExp, sum: FracSeries, order: FracExp) -> Result<FracSeries> {
    let Some(v) = sum.valuation() else {
        return Ok(FracSeries::zero(order));
    };
    let inv = euler(1, order - lead - v).pow(-3)?;
    Ok(sum.mul(&inv).mul_monomial(&coeff(1), lead).truncate(order))
}

/// Triple-sum evaluation.
///
/// In the bilateral character formula the pair of opposite `i`-terms only
/// combines into a convergent sum after sorting terms by sign region; the
/// `q`-expansion used here is
///
/// ```text
/// C = q^{(ℓ+1)^2/(4(N+2)) - m^2/(4N)} / η^3 *
///     (Σ_{j>=0, i>=1-j} - Σ_{j<=-1, i<=-j}) (-1)^i q^{i(i+m)/2 + j((N+2)j+ℓ+1) + i(2(N+2)j+ℓ+1)/2}
/// ```
///
/// which is the region decomposition whose two pieces are separately finite
/// below any order.
pub fn string_c_triple(idx: &StringIndex, order: FracExp) -> Result<FracSeries> {
    let idx = StringIndex::new(idx.n, idx.m, idx.l)?.canonical();
    let (n, m, l) = (idx.n, idx.m, idx.l);
    let s = s_exponent(&idx);
    let target = order - s;
    let np2 = n + 2;
    // exponent as a quadratic in i for fixed j
    let in_i = |jj: i64| {
        Quadratic::new(
            FracExp::new(1, 2),
            FracExp::new(m + 2 * np2 * jj + l + 1, 2),
            FracExp::int(jj * (np2 * jj + l + 1)),
        )
    };
    // With k = i + j the form is k^2/2 + (N+1) k j + j^2/2 and k j >= 0 on both
    // regions, so j is confined by j^2/2 + j(ℓ+1-m)/2 + min_k(k^2/2 + k(m+ℓ+1)/2).
    let k_part = Quadratic::new(FracExp::new(1, 2), FracExp::new(m + l + 1, 2), FracExp::ZERO);
    let j_part = Quadratic::new(FracExp::new(1, 2), FracExp::new(l + 1 - m, 2), FracExp::ZERO);
    let mut acc: BTreeMap<FracExp, i64> = BTreeMap::new();
    if let Some((j_lo, j_hi)) = j_part.range_le(target - k_part.min().1) {
        for jj in j_lo..=j_hi {
            let q = in_i(jj);
            let Some((i_lo, i_hi)) = q.range_le(target) else {
                continue;
            };
            let (lo, hi, outer) = if jj >= 0 { (i_lo.max(1 - jj), i_hi, 1) } else { (i_lo, i_hi.min(-jj), -1) };
            for i in lo..=hi {
                let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                *acc.entry(q.at(i)).or_insert(0) += outer * sign;
            }
        }
    }
    let sum = FracSeries::from_terms(acc.into_iter().map(|(e, c)| (e, coeff(c))), target);
    over_j1_cubed(s, sum, order)
}

/// `q^{s(m,ℓ,N)} / J_1^3 * f_{1,1+N,1}(q^{1+(m+ℓ)/2}, q^{1-(m-ℓ)/2}, q)`, with `m` as given.
pub fn string_s_hecke(idx: &StringIndex, order: FracExp) -> Result<FracSeries> {
    let idx = StringIndex::new(idx.n, idx.m, idx.l)?;
    let (n, m, l) = (idx.n, idx.m, idx.l);
    let s = s_exponent(&idx);
    let p = DoubleSumParams::new(
        1,
        1 + n,
        1,
        QArg::q(FracExp::new(2 + m + l, 2)),
        QArg::q(FracExp::new(2 - m + l, 2)),
    );
    over_j1_cubed(s, hecke_f(&p, order - s)?, order)
}

/// Kac–Peterson lattice sum
///
/// ```text
/// 1/η^3 Σ sg(x) q^{(N+2)x^2 - N y^2}
/// ```
///
/// over `-|x| < y <= |x|` with `(x, y)` or `(1/2 - x, 1/2 + y)` in
/// `((ℓ+1)/(2(N+2)), m/(2N)) + ℤ^2`.
pub fn string_kp_lattice(idx: &StringIndex, order: FracExp) -> Result<FracSeries> {
    let idx = StringIndex::new(idx.n, idx.m, idx.l)?.canonical();
    let (n, m, l) = (idx.n, idx.m, idx.l);
    let lead = FracExp::new(-1, 8);
    let target = order - lead;
    let c = FracExp::new(l + 1, 2 * (n + 2));
    let d = FracExp::new(m, 2 * n);
    let half = FracExp::new(1, 2);
    // On the cone (N+2)x^2 - N y^2 >= 2x^2, so 2x^2 <= target.
    let x_max = (target.to_f64().max(0.0) / 2.0).sqrt().ceil() as i64 + 1;

    let mut points: BTreeSet<(FracExp, FracExp)> = BTreeSet::new();
    for a in -x_max - 1..=x_max + 1 {
        // class 1: x = c + a, y = d + b; class 2: x = 1/2 - c - a, y = d + b - 1/2
        for (x, y0) in [(c + FracExp::int(a), d), (half - c - FracExp::int(a), d - half)] {
            // 0 < c < 1/2 keeps x away from 0 in both classes
            debug_assert!(!x.is_zero());
            if FracExp::int(2) * x * x > target {
                continue;
            }
            let ax = x.abs();
            for b in (-ax - y0).floor()..=(ax - y0).floor() + 1 {
                let y = y0 + FracExp::int(b);
                if -ax < y && y <= ax {
                    points.insert((x, y));
                }
            }
        }
    }
    let mut acc: BTreeMap<FracExp, i64> = BTreeMap::new();
    for (x, y) in points {
        let e = FracExp::int(n + 2) * x * x - FracExp::int(n) * y * y;
        if e <= target {
            *acc.entry(e).or_insert(0) += if x.is_negative() { -1 } else { 1 };
        }
    }
    let sum = FracSeries::from_terms(acc.into_iter().map(|(e, c)| (e, coeff(c))), target);
    over_j1_cubed(lead, sum, order)
}

/// Which evaluation to use for a single string function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringMethod {
    Triple,
    Hecke,
    Lattice,
}

pub fn string_function(idx: &StringIndex, method: StringMethod, order: FracExp) -> Result<FracSeries> {
    match method {
        StringMethod::Triple => string_c_triple(idx, order),
        StringMethod::Hecke => string_s_hecke(idx, order),
        StringMethod::Lattice => string_kp_lattice(idx, order),
    }
}

fn fkk1(k: i64, x: QArg, y: QArg, order: FracExp) -> Result<FracSeries> {
    hecke_f(&DoubleSumParams::new(k + 1, k + 1, 1, x, y), order)
}

fn sign_arg(sign: i8, e: FracExp) -> QArg {
    QArg::new(sign, e)
}

fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("sign must be ±1, got {sign}")))
    }
}

/// Right-hand side of the splitting identity for
/// `C^{2K}_{m,ℓ} ± C^{2K}_{2K-m,ℓ}`.
pub fn split_rhs(k: i64, m: i64, l: i64, sign: i8, order: FracExp) -> Result<FracSeries> {
    check_sign(sign)?;
    let idx = StringIndex::new(2 * k, m, l)?;
    let s = s_exponent(&idx);
    let t = order - s;
    let first = fkk1(k, sign_arg(sign, FracExp::new(2 + k + l, 2)), QArg::q(FracExp::new(2 + m + l, 2)), t)?;
    let pre = sign_arg(sign, FracExp::new(k - l, 2));
    let second = fkk1(
        k,
        sign_arg(sign, FracExp::new(2 + 3 * k - l, 2)),
        QArg::q(FracExp::new(2 + 2 * k + m - l, 2)),
        t - pre.exp(),
    )?
    .mul_qarg(pre);
    over_j1_cubed(s, first.add(&second), order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    /// `C^{2K}_{m,K}` for `m ≡ K (mod 2)`.
    FixedL,
    /// `C^{2K}_{K,ℓ}` for `ℓ ≡ K (mod 2)`.
    FixedM,
}

/// Single double-sum forms of `C^{2K}_{m,K}` and `C^{2K}_{K,ℓ}`; `free` is `m` or `ℓ`.
pub fn corollary_rhs(which: Corollary, k: i64, free: i64, order: FracExp) -> Result<FracSeries> {
    let (idx, x, y) = match which {
        Corollary::FixedL => (
            StringIndex::new(2 * k, free, k)?,
            QArg::q(k + 1),
            QArg::q(FracExp::new(2 + free + k, 2)),
        ),
        Corollary::FixedM => (
            StringIndex::new(2 * k, k, free)?,
            QArg::q(FracExp::new(2 + k + free, 2)),
            QArg::q(FracExp::new(2 - k + free, 2)),
        ),
    };
    let s = s_exponent(&idx);
    over_j1_cubed(s, fkk1(k, x, y, order - s)?, order)
}

/// Both sides of the identity relating `f_{1,2K+1,1}` and `f_{K+1,K+1,1}`:
///
/// ```text
/// f_{1,2K+1,1}(q^d, q^e) ± q^{(K+d+e)/2} f_{1,2K+1,1}(q^{1+K+d}, q^{1+K+e})
///   = f(∓q^{(K+d+e)/2}, q^d) ∓ q^{(K+2-d-e)/2} f(∓q^{2+(3K-d-e)/2}, q^{K+2-e})
/// ```
///
/// with `f = f_{K+1,K+1,1}`.
pub fn prop51_sides(
    k: i64,
    d: FracExp,
    e: FracExp,
    sign: i8,
    order: FracExp,
) -> Result<(FracSeries, FracSeries)> {
    check_sign(sign)?;
    if k < 1 {
        return Err(Error::InvalidInput(format!("K = {k} must be positive")));
    }
    let two = FracExp::int(2);
    let kk = FracExp::int(k);
    let f1 = |x: QArg, y: QArg, o: FracExp| hecke_f(&DoubleSumParams::new(1, 2 * k + 1, 1, x, y), o);

    let pre_l = sign_arg(sign, (kk + d + e) / two);
    let lhs = f1(QArg::q(d), QArg::q(e), order)?.add(
        &f1(QArg::q(kk + d + FracExp::ONE), QArg::q(kk + e + FracExp::ONE), order - pre_l.exp())?
            .mul_qarg(pre_l),
    );

    let pre_r = sign_arg(-sign, (kk + two - d - e) / two);
    let rhs = fkk1(k, sign_arg(-sign, (kk + d + e) / two), QArg::q(d), order)?.add(
        &fkk1(
            k,
            sign_arg(-sign, two + (kk.scale(3) - d - e) / two),
            QArg::q(kk + two - e),
            order - pre_r.exp(),
        )?
        .mul_qarg(pre_r),
    );
    Ok((lhs, rhs))
}
