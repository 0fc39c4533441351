//! Identities with fixed parameters: product rearrangements, closed
//! evaluations, string-function symmetries and the Kac–Peterson list.

use super::{Identity, Side};
use crate::series::FracExp;
use crate::string::{corollary_rhs, prop51_sides, split_rhs, Corollary};

/// Indices used by the symmetry and cross-method suites.
pub const STRING_INDICES: [(i64, i64, i64); 6] = [(2, 1, 1), (4, 2, 0), (4, 2, 2), (6, 5, 1), (8, 6, 2), (10, 9, 1)];

fn table(prefix: &str, order: i64, rows: &[(&str, &str, &str)]) -> Vec<Identity> {
    rows.iter()
        .map(|(id, l, r)| Identity::exprs(format!("{prefix}/{id}"), l, r, order))
        .collect()
}

pub fn notation() -> Vec<Identity> {
    table(
        "notation",
        60,
        &[
            ("Jb01=2Jb14", "Jb(0,1)", "2*Jb(1,4)"),
            ("Jb01", "Jb(0,1)", "2*Jp(2)^2/Jp(1)"),
            ("Jb12", "Jb(1,2)", "Jp(2)^5/(Jp(1)^2*Jp(4)^2)"),
            ("J12", "J(1,2)", "Jp(1)^2/Jp(2)"),
            ("Jb13", "Jb(1,3)", "Jp(2)*Jp(3)^2/(Jp(1)*Jp(6))"),
            ("J14", "J(1,4)", "Jp(1)*Jp(4)/Jp(2)"),
            ("J16", "J(1,6)", "Jp(1)*Jp(6)^2/(Jp(2)*Jp(3))"),
            ("Jb16", "Jb(1,6)", "Jp(2)^2*Jp(3)*Jp(12)/(Jp(1)*Jp(4)*Jp(6))"),
            ("J15J25", "J(1,5)*J(2,5)", "Jp(1)*Jp(5)"),
            ("J610", "J(6,10)", "J(6,30)*J(16,30)*J(26,30)*Jp(10)/Jp(30)^3"),
            ("J315", "J(3,15)", "J(3,30)*J(18,30)*Jp(15)/Jp(30)^2"),
            ("J1=J13", "Jp(1)", "J(1,3)"),
        ],
    )
}

pub fn theta_lemma() -> Vec<Identity> {
    const PREFACTOR: &str = "J(6,60)*Jb(5,30)*Jb(10,30)/(Jb(0,5)*Jb(0,30)*Jb(3,30)) * Jp(6)*Jp(60)/Jp(30)^4";
    vec![
        Identity::exprs(
            "theta-id/f661-A",
            &format!(
                "Jp(30)^3/Jb(0,5) * J(3,6)/J(3,30) - 2*{PREFACTOR} * J(9,30)*J(21,30)*J(15,30)*J(5,30)"
            ),
            "0",
            60,
        ),
        Identity::exprs(
            "theta-id/f661-B",
            &format!("4*{PREFACTOR} * J(16,30)*J(20,30)*J(26,30)*J(10,30)"),
            "J(4,10)*J(3,15)",
            60,
        ),
    ]
}

pub fn appell_evals() -> Vec<Identity> {
    table("appell", 40, &[("eval-a", "am(q, 2, -1)", "1/2"), ("eval-b", "am(-1, 2, q)", "0")])
}

pub fn expansion() -> Vec<Identity> {
    let mut v = table(
        "expansion",
        50,
        &[
            ("f551", "f(5,5,1; q^5, q^4)", "Jp(2)*Jp(10)"),
            ("f441", "f(4,4,1; -q^5, q^3) - q^(-1)*f(4,4,1; -q^3, q)", "-q^(-1)*Jp(1)^2"),
            ("f331", "f(3,3,1; -q^4, q^3) - q^(-1)*f(3,3,1; -q^2, q)", "-q^(-1)*Jp(1)*J(1,2)"),
        ],
    );
    v.extend(table(
        "expansion",
        40,
        &[("phi-lerch", "f(1,2,1; q, -q)", "2*Jb(1,4)*am(q, 3, -1)")],
    ));
    v
}

fn sidx(n: i64, m: i64, l: i64) -> String {
    format!("{n},{m},{l}")
}

pub fn string_sym() -> Vec<Identity> {
    let mut v = Vec::new();
    for (n, m, l) in STRING_INDICES {
        let base = format!("S({})", sidx(n, m, l));
        for (tag, (m2, l2)) in [("neg", (-m, l)), ("refl", (2 * n - m, l)), ("dual", (n - m, n - l))] {
            v.push(Identity::exprs(
                format!("string-sym/{tag}({})", sidx(n, m, l)),
                &base,
                &format!("S({})", sidx(n, m2, l2)),
                25,
            ));
        }
    }
    v
}

pub fn cross() -> Vec<Identity> {
    let mut v = Vec::new();
    for (n, m, l) in STRING_INDICES {
        let i = sidx(n, m, l);
        v.push(Identity::exprs(format!("cross/C=S({i})"), &format!("C({i})"), &format!("S({i})"), 20));
        v.push(Identity::exprs(format!("cross/S=KPL({i})"), &format!("S({i})"), &format!("KPL({i})"), 20));
    }
    v
}

pub const KP_10C_RHS: &str = "Jp(1)*Jp(2)*Jp(20)/J(4,20)";

pub fn kp_hecke() -> Vec<Identity> {
    table(
        "kp-hecke",
        60,
        &[
            ("1", "f(1,2,1; q, q)", "Jp(1)^2"),
            ("2", "f(2,2,1; q^2, q)", "Jp(1)*Jp(2)"),
            ("4A", "q^(-1)*f(3,3,1; q^2, 1)", "Jp(1)*Jb(6,24)"),
            ("4B", "f(3,3,1; -q^2, q) - q*f(3,3,1; -q^4, q^3)", "Jp(1)*J(1,2)"),
            ("6A", "f(4,4,1; q^4, q^3)", "Jp(2)*J(3,12)"),
            ("6B", "f(4,4,1; q^3, q^2) + q*f(4,4,1; q^5, q^4)", "Jp(2)*J(6,12)"),
            ("6C", "f(4,4,1; -q^3, q^2) - q*f(4,4,1; -q^5, q^4)", "Jp(1)^2"),
            ("8A", "f(5,5,1; q^5, q^4)", "Jp(2)*Jp(10)"),
            ("8B", "f(5,5,1; -q^4, q^3) - q*f(5,5,1; -q^6, q^5)", "J(1,2)*J(8,20)"),
            ("10A", "q^(-1)*f(6,6,1; q^5, 1)", "Jp(2)*Jb(5,20)"),
            ("10B", "f(6,6,1; q^6, q^4)", "J(4,10)*J(3,15)"),
            // the commonly quoted right side J_2 J_20 / (J_1^2 J_{4,20}) is off by J_1^3;
            // this form is the one consistent with the eta quotient for c^{91}_{91} - c^{91}_{19}
            ("10C", "f(6,6,1; -q^4, q^2) - q^2*f(6,6,1; -q^8, q^6)", KP_10C_RHS),
            ("10B-f1n1", "f(1,11,1; q^4, q^3)", "J(4,10)*J(3,15)"),
        ],
    )
}

/// `c^{N-ℓ,ℓ}_{N-m,m}` is `C(N, m, ℓ)`.
pub fn kp_eta() -> Vec<Identity> {
    table(
        "kp-eta",
        40,
        &[
            ("1", "C(1,0,0)", "eta(1)^-1"),
            ("2", "C(2,1,1)", "eta(1)^-2*eta(2)"),
            ("4A", "C(4,2,0)", "eta(1)^-2*eta(6)^-1*eta(12)^2"),
            ("4B", "C(4,0,0) - C(4,4,0)", "eta(2)^-1"),
            ("6A", "C(6,1,3)", "eta(1)^-3*eta(2)*eta(3)*eta(6)^-1*eta(12)"),
            ("6B", "C(6,1,1) + C(6,5,1)", "eta(1)^-3*eta(2)*eta(6)^2*eta(12)^-1"),
            ("6C", "C(6,1,1) - C(6,5,1)", "eta(1)^-1"),
            ("8A", "C(8,2,4)", "eta(1)^-3*eta(2)*eta(10)"),
            ("8B", "C(8,2,2) - C(8,6,2)", "eta(1)^-1*eta(2)^-1*q^(1/10)*rp(4, 5, [1, 4], 1)"),
            ("10A", "C(10,5,3)", "eta(1)^-3*eta(2)*eta(5)^-1*eta(10)^2"),
            ("10B", "C(10,1,5)", "eta(1)^-3*q^(29/40)*rp(2, 5, [1, 4], 1)*rp(3, 5, [2, 3], 1)"),
            ("10C", "C(10,1,1) - C(10,9,1)", "eta(1)^-2*eta(2)*q^(-1/15)*rp(4, 5, [0, 2, 3], -1)"),
        ],
    )
}

const SPLIT_PARAMS: [(i64, i64, i64); 6] = [(1, 1, 1), (2, 0, 0), (2, 2, 0), (3, 5, 1), (4, 6, 2), (5, 9, 1)];
/// `(K, m)` with `m ≡ K (mod 2)`.
const COR_FIXED_L: [(i64, i64); 6] = [(1, 1), (2, 0), (2, 2), (3, 1), (4, 2), (5, 3)];
/// `(K, ℓ)` with `ℓ ≡ K (mod 2)`.
const COR_FIXED_M: [(i64, i64); 6] = [(1, 1), (2, 0), (2, 2), (3, 1), (4, 4), (5, 5)];
type Ratio = (i64, i64);

/// `(K, d, e)`, `d` and `e` as `(num, den)`.
const PROP51_PARAMS: [(i64, Ratio, Ratio); 10] = [
    (1, (1, 1), (1, 1)),
    (1, (1, 1), (2, 1)),
    (1, (1, 2), (3, 2)),
    (2, (2, 1), (1, 1)),
    (2, (1, 1), (1, 1)),
    (2, (3, 1), (3, 1)),
    (3, (4, 1), (3, 1)),
    (3, (1, 1), (2, 1)),
    (4, (2, 1), (3, 1)),
    (5, (3, 1), (1, 1)),
];

fn pm(sign: i8) -> char {
    if sign > 0 {
        '+'
    } else {
        '-'
    }
}

pub fn main_thm() -> Vec<Identity> {
    let mut v = Vec::new();
    for (k, m, l) in SPLIT_PARAMS {
        for sign in [1i8, -1] {
            let s = pm(sign);
            v.push(Identity::new(
                format!("main-thm/split{s}({k},{m},{l})"),
                Side::expr(format!("C({}) {s} C({})", sidx(2 * k, m, l), sidx(2 * k, 2 * k - m, l))),
                Side::native(format!("split_rhs(K={k}, m={m}, l={l}, {s})"), move |o| {
                    split_rhs(k, m, l, sign, o)
                }),
                25,
            ));
        }
    }
    for (k, m) in COR_FIXED_L {
        v.push(Identity::new(
            format!("main-thm/cor-l({k},{m})"),
            Side::expr(format!("C({})", sidx(2 * k, m, k))),
            Side::native(format!("corollary_rhs(fixed l, K={k}, m={m})"), move |o| {
                corollary_rhs(Corollary::FixedL, k, m, o)
            }),
            25,
        ));
    }
    for (k, l) in COR_FIXED_M {
        v.push(Identity::new(
            format!("main-thm/cor-m({k},{l})"),
            Side::expr(format!("C({})", sidx(2 * k, k, l))),
            Side::native(format!("corollary_rhs(fixed m, K={k}, l={l})"), move |o| {
                corollary_rhs(Corollary::FixedM, k, l, o)
            }),
            25,
        ));
    }
    for (k, (dn, dd), (en, ed)) in PROP51_PARAMS {
        let (d, e) = (FracExp::new(dn, dd), FracExp::new(en, ed));
        for sign in [1i8, -1] {
            let s = pm(sign);
            let tag = format!("K={k}, d={d}, e={e}, {s}");
            v.push(Identity::new(
                format!("main-thm/prop51{s}({k},{d},{e})"),
                Side::native(format!("f_(1,2K+1,1) side ({tag})"), move |o| {
                    Ok(prop51_sides(k, d, e, sign, o)?.0)
                }),
                Side::native(format!("f_(K+1,K+1,1) side ({tag})"), move |o| {
                    Ok(prop51_sides(k, d, e, sign, o)?.1)
                }),
                25,
            ));
        }
    }
    v
}
