//! Text syntax for scalars, Laurent polynomials, rational functions, Ore
//! elements, module vectors and module descriptors.
//!
//! Expressions use rationals, `i`, `t`, `Th`, `Dt`, `+ - * / ^` and
//! parentheses. Exponents are integers and may be negative only on `t`.
//! Every printer in the crate emits text this module reads back:
//!
//! ```
//! use vtwist::expr::parse_laurent;
//! let f = parse_laurent("t^2 - 4*t + 1/4").unwrap();
//! assert_eq!(parse_laurent(&f.to_string()).unwrap(), f);
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::modules::{ModVec, Module, Sym};
use crate::ore::{Ore, OreElem};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::Generator;

const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    I,
    T,
    Th,
    Dt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                out.push((start, Tok::Int(src[start..pos].parse().expect("digits"))));
                continue;
            }
            b'i' => Tok::I,
            b't' => Tok::T,
            b'T' if bytes.get(pos + 1) == Some(&b'h') => {
                pos += 1;
                Tok::Th
            }
            b'D' if bytes.get(pos + 1) == Some(&b't') => {
                pos += 1;
                Tok::Dt
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = src[pos..].chars().next().expect("in bounds");
                return Err(syntax(pos, format!("unexpected character '{ch}'")));
            }
        };
        pos += 1;
        out.push((start, tok));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Int(BigInt),
    I,
    T,
    Var(Generator),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn uses(&self, g: Generator) -> bool {
        match self {
            Expr::Var(h) => *h == g,
            Expr::Int(_) | Expr::I | Expr::T => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses(g),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.uses(g) || b.uses(g)
            }
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&Tok::Slash) {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        let paren = self.eat(&Tok::LParen);
        let negative = self.eat(&Tok::Minus);
        let n = match self.toks.get(self.at) {
            Some((_, Tok::Int(n))) => n.clone(),
            _ => return Err(syntax(self.pos(), "expected an integer exponent")),
        };
        self.at += 1;
        if paren && !self.eat(&Tok::RParen) {
            return Err(syntax(self.pos(), "expected ')'"));
        }
        let n = n
            .to_i64()
            .filter(|n| *n <= MAX_EXPONENT)
            .ok_or_else(|| syntax(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        if negative && !matches!(base, Expr::T) {
            return Err(syntax(pos, "negative exponents are only allowed on t"));
        }
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        self.at += 1;
        Ok(match tok {
            Tok::Int(n) => Expr::Int(n),
            Tok::I => Expr::I,
            Tok::T => Expr::T,
            Tok::Th => Expr::Var(Generator::Theta),
            Tok::Dt => Expr::Var(Generator::Ddt),
            Tok::LParen => {
                let inner = self.sum()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.pos(), "expected ')'"));
                }
                inner
            }
            _ => return Err(syntax(pos, "expected a number, i, t, Th, Dt or '('")),
        })
    }
}

fn parse_tree(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
        end: src.len(),
    };
    let e = p.sum()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// A value domain expressions can be lowered into.
trait Lower {
    type V;
    fn int(&self, n: &BigInt) -> Self::V;
    fn i(&self) -> Self::V;
    fn t_power(&self, k: i64) -> Self::V;
    fn var(&self, g: Generator) -> Result<Self::V>;
    fn add(&self, a: Self::V, b: Self::V) -> Self::V;
    fn neg(&self, a: Self::V) -> Self::V;
    fn mul(&self, a: Self::V, b: Self::V) -> Self::V;
    fn div(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn pow(&self, a: Self::V, n: u32) -> Self::V;

    fn lower(&self, e: &Expr) -> Result<Self::V> {
        Ok(match e {
            Expr::Int(n) => self.int(n),
            Expr::I => self.i(),
            Expr::T => self.t_power(1),
            Expr::Var(g) => self.var(*g)?,
            Expr::Add(a, b) => self.add(self.lower(a)?, self.lower(b)?),
            Expr::Sub(a, b) => {
                let b = self.neg(self.lower(b)?);
                self.add(self.lower(a)?, b)
            }
            Expr::Mul(a, b) => self.mul(self.lower(a)?, self.lower(b)?),
            Expr::Div(a, b) => self.div(self.lower(a)?, self.lower(b)?)?,
            Expr::Neg(a) => self.neg(self.lower(a)?),
            Expr::Pow(a, n) if *n < 0 => {
                debug_assert!(matches!(**a, Expr::T));
                self.t_power(*n)
            }
            Expr::Pow(a, n) => self.pow(self.lower(a)?, *n as u32),
        })
    }
}

fn big_scalar(n: &BigInt) -> Scalar {
    Scalar::from_bigint(n.clone())
}

struct LaurentLower;

impl Lower for LaurentLower {
    type V = LaurentPoly;
    fn int(&self, n: &BigInt) -> LaurentPoly {
        LaurentPoly::constant(big_scalar(n))
    }
    fn i(&self) -> LaurentPoly {
        LaurentPoly::constant(Scalar::i())
    }
    fn t_power(&self, k: i64) -> LaurentPoly {
        LaurentPoly::monomial(Scalar::one(), k)
    }
    fn var(&self, _: Generator) -> Result<LaurentPoly> {
        Err(Error::Lowering(
            "Th and Dt are not allowed in a Laurent polynomial".into(),
        ))
    }
    fn add(&self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly {
        &a + &b
    }
    fn neg(&self, a: LaurentPoly) -> LaurentPoly {
        -a
    }
    fn mul(&self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly {
        &a * &b
    }
    fn div(&self, a: LaurentPoly, b: LaurentPoly) -> Result<LaurentPoly> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = b.unit_inverse().ok_or_else(|| {
            Error::Lowering(format!("{b} is not a unit of C[t,t^-1]"))
        })?;
        Ok(&a * &inv)
    }
    fn pow(&self, a: LaurentPoly, n: u32) -> LaurentPoly {
        a.pow(n)
    }
}

struct RatLower;

impl Lower for RatLower {
    type V = RatFunc;
    fn int(&self, n: &BigInt) -> RatFunc {
        RatFunc::constant(big_scalar(n))
    }
    fn i(&self) -> RatFunc {
        RatFunc::constant(Scalar::i())
    }
    fn t_power(&self, k: i64) -> RatFunc {
        RatFunc::from_laurent(&LaurentPoly::monomial(Scalar::one(), k))
    }
    fn var(&self, _: Generator) -> Result<RatFunc> {
        Err(Error::Lowering(
            "Th and Dt are not allowed in a rational function".into(),
        ))
    }
    fn add(&self, a: RatFunc, b: RatFunc) -> RatFunc {
        &a + &b
    }
    fn neg(&self, a: RatFunc) -> RatFunc {
        -a
    }
    fn mul(&self, a: RatFunc, b: RatFunc) -> RatFunc {
        &a * &b
    }
    fn div(&self, a: RatFunc, b: RatFunc) -> Result<RatFunc> {
        a.checked_div(&b)
    }
    fn pow(&self, a: RatFunc, n: u32) -> RatFunc {
        let mut out = RatFunc::one();
        for _ in 0..n {
            out = &out * &a;
        }
        out
    }
}

struct OreLower(Generator);

impl Lower for OreLower {
    type V = OreElem;
    fn int(&self, n: &BigInt) -> OreElem {
        Ore::from_coeff(self.0, LaurentPoly::constant(big_scalar(n)))
    }
    fn i(&self) -> OreElem {
        Ore::from_coeff(self.0, LaurentPoly::constant(Scalar::i()))
    }
    fn t_power(&self, k: i64) -> OreElem {
        Ore::t_power(self.0, k)
    }
    fn var(&self, g: Generator) -> Result<OreElem> {
        Ok(Ore::var(g).to_generator(self.0))
    }
    fn add(&self, a: OreElem, b: OreElem) -> OreElem {
        &a + &b
    }
    fn neg(&self, a: OreElem) -> OreElem {
        -&a
    }
    fn mul(&self, a: OreElem, b: OreElem) -> OreElem {
        &a * &b
    }
    fn div(&self, a: OreElem, b: OreElem) -> Result<OreElem> {
        let c = (b.degree() == Some(0))
            .then(|| b.coeff(0).as_constant())
            .flatten();
        match c {
            Some(c) => Ok(a.scale(&c.inv()?)),
            None if b.is_zero() => Err(Error::DivisionByZero),
            None => Err(Error::Lowering(format!(
                "division in K is only by nonzero constants, not {b}"
            ))),
        }
    }
    fn pow(&self, a: OreElem, n: u32) -> OreElem {
        a.pow(n)
    }
}

pub fn parse_laurent(src: &str) -> Result<LaurentPoly> {
    LaurentLower.lower(&parse_tree(src)?)
}

pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    RatLower.lower(&parse_tree(src)?)
}

/// Lowers to `K`. The generator is `Dt` when only `Dt` occurs and `Th`
/// otherwise; mixed input rewrites `Dt` as `t^-1 Th`.
pub fn parse_ore(src: &str) -> Result<OreElem> {
    let e = parse_tree(src)?;
    let gen = if e.uses(Generator::Ddt) && !e.uses(Generator::Theta) {
        Generator::Ddt
    } else {
        Generator::Theta
    };
    OreLower(gen).lower(&e)
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    parse_laurent(src)?
        .as_constant()
        .ok_or_else(|| Error::Lowering(format!("'{src}' is not a constant")))
}

/// A nonnegative power of `t`, read as a polynomial in one variable.
pub fn parse_poly(src: &str) -> Result<crate::ratfunc::Poly> {
    let f = parse_laurent(src)?;
    if f.min_exp().is_some_and(|k| k < 0) {
        return Err(Error::Lowering(format!("'{src}' has negative powers of t")));
    }
    Ok(RatFunc::from_laurent(&f).num().clone())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Target {
    Laurent,
    RatFunc,
    Ore,
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laurent" => Ok(Target::Laurent),
            "ratfunc" => Ok(Target::RatFunc),
            "ore" => Ok(Target::Ore),
            _ => Err(Error::Usage(format!(
                "unknown target '{s}' (laurent, ratfunc, ore)"
            ))),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Lowered {
    Laurent(LaurentPoly),
    RatFunc(RatFunc),
    Ore(OreElem),
}

impl fmt::Display for Lowered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lowered::Laurent(x) => write!(f, "{x}"),
            Lowered::RatFunc(x) => write!(f, "{x}"),
            Lowered::Ore(x) => write!(f, "{x}"),
        }
    }
}

pub fn parse(src: &str, target: Target) -> Result<Lowered> {
    Ok(match target {
        Target::Laurent => Lowered::Laurent(parse_laurent(src)?),
        Target::RatFunc => Lowered::RatFunc(parse_ratfunc(src)?),
        Target::Ore => Lowered::Ore(parse_ore(src)?),
    })
}

/// Splits at top-level `sep`, tracking `()` and `[]` nesting. Byte offsets
/// of each piece are returned with it.
fn split_top(src: &str, is_sep: impl Fn(&str, usize) -> bool) -> Vec<(usize, &str)> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in src.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if depth == 0 && is_sep(src, i) => {
                out.push((start, &src[start..i]));
                start = i;
            }
            _ => {}
        }
    }
    out.push((start, &src[start..]));
    out
}

fn parse_int_at(s: &str, offset: usize) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| syntax(offset, format!("expected an integer, found '{}'", s.trim())))
}

/// `E(3)`, `T(-2)`, `B(1,0)`, `P(0,2)`, or the shorthand `E3`, `T5`.
pub fn parse_sym(src: &str) -> Result<Sym> {
    parse_sym_at(src.trim(), 0)
}

fn parse_sym_at(s: &str, offset: usize) -> Result<Sym> {
    let mut chars = s.chars();
    let head = chars.next().ok_or_else(|| syntax(offset, "expected a basis symbol"))?;
    let rest = chars.as_str();
    let args: Vec<i64> = if let Some(inner) = rest.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| syntax(offset + s.len(), "expected ')'"))?;
        inner
            .split(',')
            .map(|a| parse_int_at(a, offset + 2))
            .collect::<Result<_>>()?
    } else {
        vec![parse_int_at(rest, offset + 1)?]
    };
    let unsigned = |v: i64| {
        u32::try_from(v).map_err(|_| syntax(offset, format!("index {v} must be nonnegative")))
    };
    match (head, args.as_slice()) {
        ('E', [k]) => Ok(Sym::E(unsigned(*k)?)),
        ('T', [k]) => Ok(Sym::T(*k)),
        ('B', [k, m]) => Ok(Sym::B(*k, unsigned(*m)?)),
        ('P', [i, j]) => Ok(Sym::P(unsigned(*i)?, unsigned(*j)?)),
        _ => Err(syntax(offset, format!("unknown basis symbol '{s}'"))),
    }
}

/// A finite combination such as `2*E(1) - 1/2*E(0)` or `(1+i)*T3 + T(-1)`.
pub fn parse_modvec(src: &str) -> Result<ModVec> {
    if src.trim() == "0" {
        return Ok(ModVec::zero());
    }
    let is_sep = |s: &str, i: usize| {
        let b = s.as_bytes();
        (b[i] == b'+' || b[i] == b'-')
            && s[..i].trim_end().chars().last().is_some_and(|c| !"*/^(,".contains(c))
    };
    let mut v = ModVec::zero();
    for (offset, piece) in split_top(src, is_sep) {
        let trimmed = piece.trim_start();
        let offset = offset + piece.len() - trimmed.len();
        let (sign, body, body_at) = match trimmed.as_bytes().first() {
            Some(b'-') => (-Scalar::one(), trimmed[1..].trim_start(), offset + 1),
            Some(b'+') => (Scalar::one(), trimmed[1..].trim_start(), offset + 1),
            _ => (Scalar::one(), trimmed, offset),
        };
        let body = body.trim_end();
        if body.is_empty() {
            return Err(syntax(body_at, "expected a term"));
        }
        let star = split_top(body, |s, i| s.as_bytes()[i] == b'*');
        let (sym_at, sym_text) = *star.last().expect("nonempty");
        let sym_text = sym_text.trim_start_matches('*').trim();
        let sym = parse_sym_at(sym_text, body_at + sym_at)?;
        let coeff = if star.len() > 1 {
            parse_scalar(&body[..sym_at]).map_err(|e| match e {
                Error::Syntax { pos, msg } => syntax(body_at + pos, msg),
                other => other,
            })?
        } else {
            Scalar::one()
        };
        v.add_term(sym, &(&sign * &coeff));
    }
    Ok(v)
}

fn parse_list(src: &str) -> Result<Vec<Scalar>> {
    let inner = src.trim();
    let inner = inner
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(inner);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_scalar).collect()
}

/// Comma-separated scalars, with or without brackets.
pub fn parse_scalar_list(src: &str) -> Result<Vec<Scalar>> {
    parse_list(src)
}

/// Reads the descriptor form printed by `Module`'s `Display`, e.g.
/// `omega(lambda=2, b=3)` or `fraction(poles=[1, 2], alphas=[1, 0], b=1/2)`.
/// `series(alpha=..., b=...)` builds `K / K(Th - alpha)`.
pub fn parse_module(src: &str) -> Result<Module> {
    let src = src.trim();
    let (name, args) = match src.find('(') {
        Some(p) => {
            let inner = src[p + 1..]
                .strip_suffix(')')
                .ok_or_else(|| syntax(src.len(), "expected ')'"))?;
            (&src[..p], inner)
        }
        None => (src, ""),
    };
    let mut kv = std::collections::BTreeMap::new();
    for (at, piece) in split_top(args, |s, i| s.as_bytes()[i] == b',') {
        let piece = piece.trim_start_matches(',').trim();
        if piece.is_empty() {
            continue;
        }
        let (k, v) = piece
            .split_once('=')
            .ok_or_else(|| syntax(name.len() + 1 + at, format!("expected key=value, found '{piece}'")))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let get = |k: &str| {
        kv.get(k)
            .map(String::as_str)
            .ok_or_else(|| Error::Usage(format!("{name} needs '{k}='")))
    };
    let b = || parse_scalar(get("b")?);
    match name.trim() {
        "omega" => Module::omega(parse_scalar(get("lambda")?)?, b()?),
        "kquotient" => Module::kquotient(parse_ore(get("beta")?)?, b()?),
        "series" => Module::intermediate_series(parse_laurent(get("alpha")?)?, b()?),
        "fraction" => Module::fraction(parse_list(get("poles")?)?, parse_list(get("alphas")?)?, b()?),
        "natural" => Ok(Module::natural(b()?)),
        "vprime00" => Ok(Module::vprime00()),
        other => Err(Error::Usage(format!(
            "unknown module family '{other}' (omega, kquotient, series, fraction, natural, vprime00)"
        ))),
    }
}

#[cfg(test)]
mod tests;
