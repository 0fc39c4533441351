use std::fmt;

use crate::series::{Coeff, FracExp, QArg};
use crate::string::StringIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

/// A call to one of the built-in q-series objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Call {
    /// `J(a, M)` = `j(q^a; q^M)`
    J { a: i64, m: i64 },
    /// `Jb(a, M)` = `j(-q^a; q^M)`
    Jb { a: i64, m: i64 },
    /// `Jp(M)` = `(q^M; q^M)_∞`
    Jp { m: i64 },
    /// `jt(x, M)` = `j(x; q^M)`
    Jt { x: QArg, m: FracExp },
    /// `eta(k)` = `η(kτ)`
    Eta { k: i64 },
    /// `am(x, M, z)` = `m(x, q^M, z)`
    Am { x: QArg, m: FracExp, z: QArg },
    /// `f(a, b, c; x, y)` = `f_{a,b,c}(x, y, q)`
    F { a: i64, b: i64, c: i64, x: QArg, y: QArg },
    /// `C(N, m, ℓ)`, triple-sum string function
    C(StringIndex),
    /// `S(N, m, ℓ)`, Hecke form
    S(StringIndex),
    /// `KPL(N, m, ℓ)`, lattice form
    Kpl(StringIndex),
    /// `rp(step, mod, [excluded], power)`
    Rp { step: i64, modulus: i64, excluded: Vec<i64>, power: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rat(Coeff),
    QPow(QArg),
    Call(Call),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Self {
        Expr::Bin(op, Box::new(l), Box::new(r))
    }

    fn is_bin(&self) -> bool {
        matches!(self, Expr::Bin(..))
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, c: &Coeff) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// `q`-power literal; unlike [`QArg`]'s display this never collapses `q^0` to `1`.
fn write_qpow(f: &mut fmt::Formatter<'_>, x: QArg) -> fmt::Result {
    let sign = if x.is_negative() { "-" } else { "" };
    let e = x.exp();
    if e.is_integer() && !e.is_negative() {
        write!(f, "{sign}q^{}", e.num())
    } else {
        write!(f, "{sign}q^({e})")
    }
}

fn write_index(f: &mut fmt::Formatter<'_>, name: &str, i: &StringIndex) -> fmt::Result {
    write!(f, "{name}({}, {}, {})", i.n, i.m, i.l)
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Call::J { a, m } => write!(f, "J({a}, {m})"),
            Call::Jb { a, m } => write!(f, "Jb({a}, {m})"),
            Call::Jp { m } => write!(f, "Jp({m})"),
            Call::Jt { x, m } => write!(f, "jt({x}, {m})"),
            Call::Eta { k } => write!(f, "eta({k})"),
            Call::Am { x, m, z } => write!(f, "am({x}, {m}, {z})"),
            Call::F { a, b, c, x, y } => write!(f, "f({a}, {b}, {c}; {x}, {y})"),
            Call::C(i) => write_index(f, "C", i),
            Call::S(i) => write_index(f, "S", i),
            Call::Kpl(i) => write_index(f, "KPL", i),
            Call::Rp { step, modulus, excluded, power } => {
                let list: Vec<String> = excluded.iter().map(|r| r.to_string()).collect();
                write!(f, "rp({step}, {modulus}, [{}], {power})", list.join(", "))
            }
        }
    }
}

/// Prints in a form that parses back to the same tree: binary operations are
/// fully parenthesized, the divisor of `/` is always grouped (so `1 / (3)` is
/// not read as the literal `1/3`), and non-atomic bases of `^` are grouped.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rat(c) => write_rat(f, c),
            Expr::QPow(x) => write_qpow(f, *x),
            Expr::Call(c) => write!(f, "{c}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Bin(op, l, r) => {
                if *op == BinOp::Div && !r.is_bin() {
                    write!(f, "({l} / ({r}))")
                } else {
                    write!(f, "({l} {} {r})", op.symbol())
                }
            }
            Expr::Pow(base, k) => match **base {
                Expr::Neg(_) | Expr::Pow(..) => write!(f, "({base})^{k}"),
                _ => write!(f, "{base}^{k}"),
            },
        }
    }
}
