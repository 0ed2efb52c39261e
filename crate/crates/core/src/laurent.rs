//! Sparse Laurent polynomials over [`Scalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Generator;

/// An element of `C[t, t^-1]`. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Scalar::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        LaurentPoly::monomial(Scalar::one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in iter {
            p.add_term(k, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Scalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate over `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Scalar)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The constant value, if the polynomial has no non-constant term.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Units of `C[t,t^-1]` are exactly the monomials `c t^k` with `c != 0`.
    pub fn as_unit(&self) -> Option<(&Scalar, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, k) = self.as_unit()?;
        Some(LaurentPoly::monomial(c.inv().ok()?, -k))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Apply `theta = t d/dt` or `d/dt`.
    pub fn derive(&self, gen: Generator) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, c) in &self.terms {
            if *k == 0 {
                continue;
            }
            let c = c * &Scalar::from_int(*k);
            match gen {
                Generator::Theta => out.add_term(*k, &c),
                Generator::Ddt => out.add_term(k - 1, &c),
            }
        }
        out
    }

    pub fn eval(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            if self.min_exp().is_some_and(|m| m < 0) {
                return Err(Error::EvalAtPole);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = Scalar::zero();
        for (k, c) in &self.terms {
            acc = acc + c * &a.pow(*k)?;
        }
        Ok(acc)
    }

    /// `(f(t) - f(a)) / (t - a)`, computed by synthetic division after
    /// clearing negative powers of `t`. The division is always exact.
    pub fn difference_quotient(&self, a: &Scalar) -> Result<Self> {
        let fa = self.eval(a)?;
        let low = self.min_exp().unwrap_or(0).min(0);
        // q(t) = t^-low (f(t) - f(a)) is a polynomial vanishing at a
        let top = self.max_exp().unwrap_or(0).max(0) - low;
        let mut dense = vec![Scalar::zero(); (top + 1) as usize];
        for (k, c) in &self.terms {
            dense[(k - low) as usize] = c.clone();
        }
        let idx = (-low) as usize;
        dense[idx] = &dense[idx] - &fa;
        // synthetic division by (t - a), highest degree first
        let mut quotient = vec![Scalar::zero(); dense.len().saturating_sub(1)];
        let mut carry = Scalar::zero();
        for d in (1..dense.len()).rev() {
            carry = &dense[d] + &(&carry * a);
            quotient[d - 1] = carry.clone();
        }
        let remainder = &dense[0] + &(&carry * a);
        debug_assert!(remainder.is_zero(), "difference quotient must be exact");
        Ok(LaurentPoly::from_terms(
            quotient
                .into_iter()
                .enumerate()
                .map(|(d, c)| (d as i64 + low, c)),
        ))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative_literal();
            let mag = if negative { -c } else { c.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, &mag, *k)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &Scalar, k: i64) -> fmt::Result {
    if k == 0 {
        return write!(f, "{c}");
    }
    if !c.is_one() {
        write!(f, "{c}*")?;
    }
    match k {
        1 => write!(f, "t"),
        _ => write!(f, "t^{k}"),
    }
}

impl From<Scalar> for LaurentPoly {
    fn from(c: Scalar) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Scalar::one())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
