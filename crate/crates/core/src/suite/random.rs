//! Randomized instances of the functional equations. Each equation draws from
//! its own ChaCha stream so adding instances to one never shifts another.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Identity, Side};
use crate::appell::AppellSpec;
use crate::error::Error;
use crate::hecke::{f1p1_expansion, fnn1_expansion};
use crate::series::{FracExp, QArg};
use crate::theta::{is_singular, jtheta_neg_base};

/// Instances drawn per functional equation.
pub const INSTANCES: usize = 25;
/// Instances drawn per expansion theorem and parameter.
pub const EXPANSION_INSTANCES: usize = 10;

const THETA_ORDER: i64 = 40;
const APPELL_ORDER: i64 = 40;
const HECKE_ORDER: i64 = 30;
const EXPANSION_ORDER: i64 = 25;

fn stream(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// `±q^{n/d}` with `d` drawn from `dens` and `lo <= n/d <= hi`.
fn arg(rng: &mut ChaCha8Rng, lo: i64, hi: i64, dens: &[i64]) -> QArg {
    let d = *dens.choose(rng).expect("nonempty");
    let e = FracExp::new(rng.gen_range(lo * d..=hi * d), d);
    QArg::new(if rng.gen_bool(0.5) { 1 } else { -1 }, e)
}

fn theta_arg(rng: &mut ChaCha8Rng, m: i64) -> QArg {
    loop {
        let x = arg(rng, -3, 3, &[1, 2, 3]);
        if !is_singular(x, FracExp::int(m)) {
            return x;
        }
    }
}

/// `q^{M C(n,2)}`-style exponents: `M n (n-1) / 2`.
fn tri(m: i64, n: i64) -> i64 {
    m * n * (n - 1) / 2
}

fn jt(x: QArg, m: i64) -> String {
    format!("jt({x}, {m})")
}

fn theta_instance(which: usize, rng: &mut ChaCha8Rng, k: usize) -> Identity {
    let m = rng.gen_range(1..=3);
    let x = theta_arg(rng, m);
    let (name, lhs, rhs) = match which {
        0 => {
            let n = rng.gen_range(2..=4);
            let terms: Vec<String> = (0..n)
                .map(|k| {
                    let coef = QArg::new(if k % 2 == 0 { 1 } else { -1 }, FracExp::int(tri(m, k))) * x.pow(k);
                    let sign = if n % 2 == 1 { 1 } else { -1 };
                    let inner = QArg::new(sign, FracExp::int(tri(m, n) + m * n * k)) * x.pow(n);
                    format!("{coef}*{}", jt(inner, m * n * n))
                })
                .collect();
            ("j-split", Side::expr(jt(x, m)), Side::expr(terms.join(" + ")))
        }
        1 => {
            let n = rng.gen_range(-3..=3);
            let coef = QArg::new(if n % 2 == 0 { 1 } else { -1 }, FracExp::int(-tri(m, n))) * x.pow(-n);
            ("j-elliptic", Side::expr(jt(x.shift(m * n), m)), Side::expr(format!("{coef}*{}", jt(x, m))))
        }
        2 => ("j-reflect", Side::expr(jt(x, m)), Side::expr(jt(x.inv().shift(m), m))),
        3 => {
            let n = rng.gen_range(1..=4);
            let prod: Vec<String> = (0..n).map(|k| jt(x.shift(m * k), m * n)).collect();
            (
                "j-dissect",
                Side::expr(jt(x, m)),
                Side::expr(format!("Jp({m})*{}/Jp({})^{n}", prod.join("*"), m * n)),
            )
        }
        4 => {
            let fm = FracExp::int(m);
            (
                "j-negbase",
                Side::native(format!("j({x}; -q^{m})"), move |o| jtheta_neg_base(x, fm, o)),
                Side::expr(format!("{}*{}/J({m}, {})", jt(x, 2 * m), jt(-x.shift(m), 2 * m), 4 * m)),
            )
        }
        5 => (
            "j-square",
            Side::expr(jt(x.pow(2), 2 * m)),
            Side::expr(format!("Jp({})*{}*{}/Jp({m})^2", 2 * m, jt(x, m), jt(-x, m))),
        ),
        6 => {
            let [a, b, c, d] = [x, theta_arg(rng, m), theta_arg(rng, m), theta_arg(rng, m)];
            let pair = |u: QArg, v: QArg| format!("{}*{}", jt(u * v, m), jt(u * v.inv(), m));
            (
                "weierstrass",
                Side::expr(format!("{}*{}", pair(a, c), pair(b, d))),
                Side::expr(format!(
                    "{}*{} + {}*{}*{}",
                    pair(a, d),
                    pair(b, c),
                    b * c.inv(),
                    pair(a, b),
                    pair(c, d)
                )),
            )
        }
        7 | 8 => {
            let y = theta_arg(rng, m);
            let lhs = format!(
                "{}*{} {} {}*{}",
                jt(-x, m),
                jt(y, m),
                if which == 7 { '-' } else { '+' },
                jt(x, m),
                jt(-y, m)
            );
            let rhs = if which == 7 {
                format!("2*{x}*{}*{}", jt(y * x.inv(), 2 * m), jt((x * y).shift(m), 2 * m))
            } else {
                format!("2*{}*{}", jt(x * y, 2 * m), jt((y * x.inv()).shift(m), 2 * m))
            };
            (if which == 7 { "theta-diff" } else { "theta-sum" }, Side::expr(lhs), Side::expr(rhs))
        }
        _ => unreachable!(),
    };
    Identity::new(format!("theta-id/{name}#{k}"), lhs, rhs, THETA_ORDER)
}

pub fn theta(seed: u64) -> Vec<Identity> {
    let mut v = Vec::new();
    for which in 0..9 {
        let mut rng = stream(seed, 100 + which as u64);
        v.extend((0..INSTANCES).map(|k| theta_instance(which, &mut rng, k)));
    }
    v
}

fn am(x: QArg, m: i64, z: QArg) -> String {
    format!("am({x}, {m}, {z})")
}

fn valid(calls: &[(QArg, i64, QArg)]) -> bool {
    calls.iter().all(|&(x, m, z)| AppellSpec::new(x, m, z).validate().is_ok())
}

fn appell_instance(which: usize, rng: &mut ChaCha8Rng, k: usize) -> Identity {
    loop {
        let m = *[1, 2, 3, 5, 12].choose(rng).expect("nonempty");
        let x = arg(rng, -3, 3, &[1, 2, 3, 4]);
        let z = arg(rng, -3, 3, &[1, 2, 3, 4]);
        let qm = QArg::q(m);
        let (name, calls, lhs, rhs) = match which {
            0 => ("m-shift-z", vec![(x, m, z), (x, m, z * qm)], am(x, m, z), am(x, m, z * qm)),
            1 => (
                "m-flip",
                vec![(x, m, z), (x.inv(), m, z.inv())],
                am(x, m, z),
                format!("{}*{}", x.inv(), am(x.inv(), m, z.inv())),
            ),
            2 => ("m-shift-x", vec![(x * qm, m, z), (x, m, z)], am(x * qm, m, z), format!("1 - {x}*{}", am(x, m, z))),
            3 => ("m-flip-xz", vec![(x, m, z), (x, m, (x * z).inv())], am(x, m, z), am(x, m, (x * z).inv())),
            4 => {
                let z1 = arg(rng, -3, 3, &[1, 2, 3, 4]);
                let z0 = z;
                let rhs = format!(
                    "{z0}*Jp({m})^3*{}*{}/({}*{}*{}*{})",
                    jt(z1 * z0.inv(), m),
                    jt(x * z0 * z1, m),
                    jt(z0, m),
                    jt(z1, m),
                    jt(x * z0, m),
                    jt(x * z1, m)
                );
                ("changing-z", vec![(x, m, z1), (x, m, z0)], format!("{} - {}", am(x, m, z1), am(x, m, z0)), rhs)
            }
            _ => unreachable!(),
        };
        if valid(&calls) {
            return Identity::exprs(format!("appell/{name}#{k}"), &lhs, &rhs, APPELL_ORDER);
        }
    }
}

pub fn appell(seed: u64) -> Vec<Identity> {
    let mut v = Vec::new();
    for which in 0..5 {
        let mut rng = stream(seed, 200 + which as u64);
        v.extend((0..INSTANCES).map(|k| appell_instance(which, &mut rng, k)));
    }
    v
}

fn f(a: i64, b: i64, c: i64, x: QArg, y: QArg) -> String {
    format!("f({a},{b},{c}; {x}, {y})")
}

/// Draws `(a, b, c, x, y)` for a double sum.
fn hecke_params(rng: &mut ChaCha8Rng) -> (i64, i64, i64, QArg, QArg) {
    let [a, b, c] = [rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3)];
    (a, b, c, arg(rng, -2, 3, &[1, 2]), arg(rng, -2, 3, &[1, 2]))
}

/// The shift equation for one `(R, S)`.
fn f_shift(params: (i64, i64, i64, QArg, QArg), r: i64, s: i64, id: String) -> Identity {
    let (a, b, c, x, y) = params;
    let e = FracExp::int(a * r * (r - 1) / 2 + b * r * s + c * s * (s - 1) / 2);
    let lead = ((-x).pow(r) * (-y).pow(s)).shift(e);
    let mut terms = vec![format!("{lead}*{}", f(a, b, c, x.shift(a * r + b * s), y.shift(b * r + c * s)))];
    // finite sums with the convention Σ_{0}^{R-1} = -Σ_{R}^{-1} for R < 0
    let mut partial = |n: i64, u: QArg, v: QArg, ku: i64, kv: i64| {
        let (range, sign) = if n >= 0 { (0..n, 1) } else { (n..0, -1) };
        for mm in range {
            let coef = QArg::new(sign, FracExp::int(ku * mm * (mm - 1) / 2)) * (-u).pow(mm);
            terms.push(format!("{coef}*{}", jt(v.shift(mm * b), kv)));
        }
    };
    partial(r, x, y, a, c);
    partial(s, y, x, c, a);
    Identity::exprs(id, &f(a, b, c, x, y), &terms.join(" + "), HECKE_ORDER)
}

fn hecke_instance(which: usize, rng: &mut ChaCha8Rng, k: usize) -> Identity {
    let (a, b, c, x, y) = hecke_params(rng);
    let lhs = f(a, b, c, x, y);
    let (name, rhs) = match which {
        1 => {
            let pre = -(x * y).inv().shift(a + b + c);
            ("f-flip", format!("{pre}*{}", f(a, b, c, x.inv().shift(2 * a + b), y.inv().shift(2 * c + b))))
        }
        2 => ("f-step-1", format!("{}*{} + {}", -y, f(a, b, c, x.shift(b), y.shift(c)), jt(x, a))),
        3 => ("f-step-2", format!("{}*{} + {}", -x, f(a, b, c, x.shift(a), y.shift(b)), jt(y, c))),
        4 => ("f-swap", f(c, b, a, y, x)),
        _ => unreachable!(),
    };
    Identity::exprs(format!("hecke-fe/{name}#{k}"), &lhs, &rhs, HECKE_ORDER)
}

/// Parameter sets for the shift equation; each is checked at every `(R, S)` in `[-2, 2]^2`.
pub const SHIFT_PARAM_SETS: usize = 10;

pub fn hecke(seed: u64) -> Vec<Identity> {
    let mut v = Vec::new();
    let mut rng = stream(seed, 300);
    for k in 0..SHIFT_PARAM_SETS {
        let params = hecke_params(&mut rng);
        for r in -2..=2 {
            for s in -2..=2 {
                v.push(f_shift(params, r, s, format!("hecke-fe/f-shift#{k}({r},{s})")));
            }
        }
    }
    for which in 1..5 {
        let mut rng = stream(seed, 300 + which as u64);
        v.extend((0..INSTANCES).map(|k| hecke_instance(which, &mut rng, k)));
    }
    v
}

/// Draws integer-exponent `(x, y)` until the expansion is nonsingular.
fn nonsingular(
    rng: &mut ChaCha8Rng,
    expand: impl Fn(QArg, QArg) -> Result<(), Error>,
) -> (QArg, QArg) {
    loop {
        let x = arg(rng, -3, 4, &[1]);
        let y = arg(rng, -3, 4, &[1]);
        match expand(x, y) {
            Err(Error::SingularSpec(_)) => continue,
            _ => return (x, y),
        }
    }
}

pub fn expansion(seed: u64) -> Vec<Identity> {
    let probe = FracExp::ZERO;
    let mut v = Vec::new();
    for p in 1..=3 {
        let mut rng = stream(seed, 400 + p as u64);
        for k in 0..EXPANSION_INSTANCES {
            let (x, y) = nonsingular(&mut rng, |x, y| f1p1_expansion(p, x, y, probe).map(drop));
            v.push(Identity::new(
                format!("expansion/f1p1(p={p})#{k}"),
                Side::expr(f(1, p + 1, 1, x, y)),
                Side::native(format!("g_(1,{},1)({x}, {y}) + theta_{p}/Jb(0,{})", p + 1, p * (p + 2)), move |o| {
                    f1p1_expansion(p, x, y, o)
                }),
                EXPANSION_ORDER,
            ));
        }
    }
    for n in 2..=6 {
        let mut rng = stream(seed, 500 + n as u64);
        for k in 0..EXPANSION_INSTANCES {
            let (x, y) = nonsingular(&mut rng, |x, y| fnn1_expansion(n, x, y, probe).map(drop));
            v.push(Identity::new(
                format!("expansion/fnn1(n={n})#{k}"),
                Side::expr(f(n, n, 1, x, y)),
                Side::native(format!("h_({n},{n},1)({x}, {y}, -1, -1) - theta_{n}/(Jb(0,{})*Jb(0,{}))", n - 1, n * n - n), move |o| {
                    fnn1_expansion(n, x, y, o)
                }),
                EXPANSION_ORDER,
            ));
        }
    }
    v
}
