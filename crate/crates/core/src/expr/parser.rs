//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom ("^" sint)?
//! atom   := rat | qpow | call | "(" expr ")"
//! qpow   := ["-"] "q" ["^" "(" rat ")" | "^" sint]
//! rat    := sint ["/" uint]
//! call   := ident "(" args ")"
//! ```
//!
//! A leading `-` directly before a number or `q` belongs to the literal; in
//! front of anything else it negates the following factor. `;` may be used
//! wherever `,` separates arguments.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::ast::{BinOp, Call, Expr};
use crate::series::{Coeff, FracExp, QArg};
use crate::string::StringIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse::<i64>().map_err(|_| ParseError {
                offset: start,
                expected: vec!["a number that fits in 64 bits".into()],
                found: text[start..i].to_string(),
            })?;
            out.push((Tok::Num(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^(),;[]".contains(c) {
            out.push((Tok::Sym(if c == ';' { ',' } else { c }), i));
            i += 1;
        } else {
            let found = text[i..].chars().next().map(String::from).unwrap_or_default();
            return Err(ParseError { offset: i, expected: vec!["a token".into()], found });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

#[derive(Clone, Copy)]
enum Slot {
    Int,
    Rat,
    Q,
    List,
}

enum Arg {
    Int(i64),
    Rat(FracExp),
    Q(QArg),
    List(Vec<i64>),
}

fn signature(name: &str) -> Option<&'static [Slot]> {
    use Slot::*;
    Some(match name {
        "J" | "Jb" => &[Int, Int],
        "Jp" | "eta" => &[Int],
        "jt" => &[Q, Rat],
        "am" => &[Q, Rat, Q],
        "f" => &[Int, Int, Int, Q, Q],
        "C" | "S" | "KPL" => &[Int, Int, Int],
        "rp" => &[Int, Int, List, Int],
        _ => return None,
    })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn invalid<T>(&self, offset: usize, what: String) -> Result<T, ParseError> {
        Err(ParseError { offset, expected: vec![what], found: "an out-of-range value".into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::bin(op, lhs, self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Sym('-') && !self.literal_follows_minus() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.sint()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn literal_follows_minus(&self) -> bool {
        match self.peek_at(1) {
            Tok::Num(_) => true,
            Tok::Ident(s) => s == "q",
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(_) => Ok(Expr::Rat(self.rat_coeff()?)),
            Tok::Sym('-') => match self.peek_at(1) {
                Tok::Num(_) => Ok(Expr::Rat(self.rat_coeff()?)),
                _ => Ok(Expr::QPow(self.qpow()?)),
            },
            Tok::Ident(name) if name == "q" => Ok(Expr::QPow(self.qpow()?)),
            Tok::Ident(name) => self.call(&name),
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.fail(&["a number", "a q-power", "a function call", "`(`"]),
        }
    }

    fn uint(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Tok::Num(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["an integer"]),
        }
    }

    fn sint(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let n = self.uint()?;
        Ok(if neg { -n } else { n })
    }

    /// `sint ["/" uint]`; the slash is taken only when a number follows it.
    fn rat_parts(&mut self) -> Result<(i64, i64), ParseError> {
        let num = self.sint()?;
        if *self.peek() == Tok::Sym('/') && matches!(self.peek_at(1), Tok::Num(_)) {
            self.bump();
            let at = self.offset();
            let den = self.uint()?;
            if den == 0 {
                return self.invalid(at, "a nonzero denominator".into());
            }
            return Ok((num, den));
        }
        Ok((num, 1))
    }

    fn rat_coeff(&mut self) -> Result<Coeff, ParseError> {
        let (n, d) = self.rat_parts()?;
        Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn rat_exp(&mut self) -> Result<FracExp, ParseError> {
        let (n, d) = self.rat_parts()?;
        Ok(FracExp::new(n, d))
    }

    fn qpow(&mut self) -> Result<QArg, ParseError> {
        let neg = self.eat('-');
        match self.peek() {
            Tok::Ident(s) if s == "q" => {
                self.bump();
            }
            _ => return self.fail(&["`q`"]),
        }
        let exp = if self.eat('^') {
            if self.eat('(') {
                let e = self.rat_exp()?;
                self.expect(')')?;
                e
            } else {
                FracExp::int(self.sint()?)
            }
        } else {
            FracExp::ONE
        };
        Ok(QArg::new(if neg { -1 } else { 1 }, exp))
    }

    fn arg(&mut self, slot: Slot) -> Result<Arg, ParseError> {
        Ok(match slot {
            Slot::Int => Arg::Int(self.sint()?),
            Slot::Rat => Arg::Rat(self.rat_exp()?),
            Slot::Q => {
                let is_num = match self.peek() {
                    Tok::Num(_) => true,
                    Tok::Sym('-') => matches!(self.peek_at(1), Tok::Num(_)),
                    _ => false,
                };
                if !is_num {
                    return Ok(Arg::Q(self.qpow()?));
                }
                let at = self.offset();
                match self.sint()? {
                    1 => Arg::Q(QArg::ONE),
                    -1 => Arg::Q(QArg::MINUS_ONE),
                    _ => return self.invalid(at, "a q-power or ±1".into()),
                }
            }
            Slot::List => {
                self.expect('[')?;
                let mut items = Vec::new();
                if !self.eat(']') {
                    loop {
                        items.push(self.sint()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Arg::List(items)
            }
        })
    }

    fn call(&mut self, name: &str) -> Result<Expr, ParseError> {
        let start = self.offset();
        let Some(sig) = signature(name) else {
            return self.fail(&["a known function (J, Jb, Jp, jt, eta, am, f, C, S, KPL, rp) or `q`"]);
        };
        self.bump();
        self.expect('(')?;
        let mut args = Vec::with_capacity(sig.len());
        for (i, slot) in sig.iter().enumerate() {
            if i > 0 {
                self.expect(',')?;
            }
            args.push(self.arg(*slot)?);
        }
        self.expect(')')?;
        build_call(name, args).map(Expr::Call).or_else(|what| self.invalid(start, what))
    }
}

fn build_call(name: &str, args: Vec<Arg>) -> Result<Call, String> {
    let mut ints = Vec::new();
    let mut rats = Vec::new();
    let mut qs = Vec::new();
    let mut list = Vec::new();
    for a in args {
        match a {
            Arg::Int(n) => ints.push(n),
            Arg::Rat(r) => rats.push(r),
            Arg::Q(x) => qs.push(x),
            Arg::List(l) => list = l,
        }
    }
    let positive = |n: i64, what: &str| if n >= 1 { Ok(n) } else { Err(format!("{what} >= 1 in {name}")) };
    let positive_rat = |r: FracExp| {
        if r.is_positive() {
            Ok(r)
        } else {
            Err(format!("a positive modulus in {name}"))
        }
    };
    let index = |i: &[i64]| StringIndex::new(i[0], i[1], i[2]).map_err(|e| format!("a valid string index ({e})"));
    Ok(match name {
        "J" => Call::J { a: ints[0], m: positive(ints[1], "modulus")? },
        "Jb" => Call::Jb { a: ints[0], m: positive(ints[1], "modulus")? },
        "Jp" => Call::Jp { m: positive(ints[0], "modulus")? },
        "eta" => Call::Eta { k: positive(ints[0], "argument")? },
        "jt" => Call::Jt { x: qs[0], m: positive_rat(rats[0])? },
        "am" => Call::Am { x: qs[0], m: positive_rat(rats[0])?, z: qs[1] },
        "f" => Call::F {
            a: positive(ints[0], "a")?,
            b: positive(ints[1], "b")?,
            c: positive(ints[2], "c")?,
            x: qs[0],
            y: qs[1],
        },
        "C" => Call::C(index(&ints)?),
        "S" => Call::S(index(&ints)?),
        "KPL" => Call::Kpl(index(&ints)?),
        "rp" => {
            let step = positive(ints[0], "step")?;
            let modulus = positive(ints[1], "modulus")?;
            if ints[2] == 0 {
                return Err("a nonzero power in rp".into());
            }
            if list.iter().any(|r| !(0..modulus).contains(r)) {
                return Err(format!("residues in [0, {modulus}) in rp"));
            }
            Call::Rp { step, modulus, excluded: list, power: ints[2] }
        }
        _ => unreachable!("signature checked"),
    })
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["an operator", "end of input"]);
    }
    Ok(e)
}
