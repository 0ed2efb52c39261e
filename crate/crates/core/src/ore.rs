//! Normal-form arithmetic in the Ore extensions `C[t,t^-1][X]` and `C(t)[X]`,
//! where `X` is either `theta = t d/dt` or `d/dt`.
//!
//! Elements are kept as `sum_m c_m(t) X^m` with coefficients on the left.
//! Products use the closed form
//! `X^m f = sum_j binom(m, j) delta^j(f) X^(m-j)` with `delta` the derivation
//! matching the generator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::Generator;

/// Coefficient rings the Ore extension is built over.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn derive(&self, gen: Generator) -> Self;
    /// `c t^k`.
    fn monomial(c: Scalar, k: i64) -> Self;
    /// Inverse when `self` is a unit of the coefficient ring.
    fn unit_inverse(&self) -> Option<Self>;
    /// Printed form for use as a left factor: `(negative, magnitude)`.
    fn factor_text(&self) -> (bool, String);

    fn one() -> Self {
        Self::monomial(Scalar::one(), 0)
    }
}

fn laurent_factor_text(f: &LaurentPoly) -> (bool, String) {
    match f.as_unit() {
        Some((c, k)) if c.is_negative_literal() => {
            (true, LaurentPoly::monomial(-c, k).to_string())
        }
        Some(_) => (false, f.to_string()),
        None => (false, format!("({f})")),
    }
}

impl Coeff for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Scalar) -> Self {
        LaurentPoly::scale(self, s)
    }
    fn derive(&self, gen: Generator) -> Self {
        LaurentPoly::derive(self, gen)
    }
    fn monomial(c: Scalar, k: i64) -> Self {
        LaurentPoly::monomial(c, k)
    }
    fn unit_inverse(&self) -> Option<Self> {
        LaurentPoly::unit_inverse(self)
    }
    fn factor_text(&self) -> (bool, String) {
        laurent_factor_text(self)
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Scalar) -> Self {
        RatFunc::scale(self, s)
    }
    fn derive(&self, gen: Generator) -> Self {
        RatFunc::derive(self, gen)
    }
    fn monomial(c: Scalar, k: i64) -> Self {
        RatFunc::from_laurent(&LaurentPoly::monomial(c, k))
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn factor_text(&self) -> (bool, String) {
        match self.to_laurent() {
            Some(f) => laurent_factor_text(&f),
            None => (false, format!("({self})")),
        }
    }
}

/// `sum_m c_m(t) X^m` in normal form; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ore<C> {
    gen: Generator,
    coeffs: BTreeMap<u32, C>,
}

/// An element of `K = C[t,t^-1][X]`.
pub type OreElem = Ore<LaurentPoly>;
/// An element of `C(t)[X]`.
pub type RatOreElem = Ore<RatFunc>;

fn binomial_row(m: u32) -> Vec<Scalar> {
    let mut row = vec![Scalar::one()];
    for j in 1..=m {
        let prev = row[(j - 1) as usize].clone();
        row.push(
            (&prev * &Scalar::from_int((m - j + 1) as i64))
                .checked_div(&Scalar::from_int(j as i64))
                .unwrap(),
        );
    }
    row
}

impl<C: Coeff> Ore<C> {
    pub fn zero(gen: Generator) -> Self {
        Ore {
            gen,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(gen: Generator) -> Self {
        Ore::from_coeff(gen, C::one())
    }

    /// The generator `X` itself.
    pub fn var(gen: Generator) -> Self {
        Ore::monomial(gen, C::one(), 1)
    }

    /// `t^k` as an operator of degree zero.
    pub fn t_power(gen: Generator, k: i64) -> Self {
        Ore::from_coeff(gen, C::monomial(Scalar::one(), k))
    }

    pub fn from_coeff(gen: Generator, c: C) -> Self {
        Ore::monomial(gen, c, 0)
    }

    /// `c X^m`.
    pub fn monomial(gen: Generator, c: C, m: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(m, c);
        }
        Ore { gen, coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, C)>>(gen: Generator, iter: I) -> Self {
        let mut out = Ore::zero(gen);
        for (m, c) in iter {
            out.add_term(m, &c);
        }
        out
    }

    fn add_term(&mut self, m: u32, c: &C) {
        if c.is_zero() {
            return;
        }
        let next = match self.coeffs.get(&m) {
            Some(old) => old.plus(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, next);
        }
    }

    pub fn gen(&self) -> Generator {
        self.gen
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.values().next_back()
    }

    pub fn coeff(&self, m: u32) -> C {
        self.coeffs.get(&m).cloned().unwrap_or_else(C::zero)
    }

    /// `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &C)> + '_ {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    fn same_gen(&self, other: &Self) -> Result<()> {
        if self.gen == other.gen {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_gen(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_gen(other)?;
        let mut out = Ore::zero(self.gen);
        let max_m = self.degree().unwrap_or(0);
        // derivatives delta^j(b) for every coefficient of `other`
        let mut derivs: Vec<(u32, Vec<C>)> = Vec::with_capacity(other.coeffs.len());
        for (n, b) in &other.coeffs {
            let mut chain = Vec::with_capacity(max_m as usize + 1);
            let mut cur = b.clone();
            for _ in 0..=max_m {
                let next = cur.derive(self.gen);
                chain.push(cur);
                if next.is_zero() {
                    break;
                }
                cur = next;
            }
            derivs.push((*n, chain));
        }
        for (m, a) in &self.coeffs {
            let binom = binomial_row(*m);
            for (n, chain) in &derivs {
                for (j, dj) in chain.iter().enumerate().take(*m as usize + 1) {
                    let c = a.times(dj).scale(&binom[j]);
                    out.add_term(m - j as u32 + n, &c);
                }
            }
        }
        Ok(out)
    }

    /// `x y - y x`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Ore::from_coeffs(self.gen, self.coeffs.iter().map(|(m, c)| (*m, c.scale(s))))
    }

    /// Left multiplication by a coefficient: `c * self`.
    pub fn left_mul_coeff(&self, c: &C) -> Self {
        Ore::from_coeffs(self.gen, self.coeffs.iter().map(|(m, a)| (*m, c.times(a))))
    }

    fn neg_ref(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Ore::one(self.gen);
        for _ in 0..n {
            acc = acc.checked_mul(self).expect("same generator");
        }
        acc
    }

    /// Right division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn right_divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_gen(divisor)?;
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor
            .leading_coeff()
            .and_then(C::unit_inverse)
            .ok_or(Error::NonUnitLeadingCoeff)?;
        let mut quotient = Ore::zero(self.gen);
        let mut rem = self.clone();
        while let Some(m) = rem.degree() {
            if m < d {
                break;
            }
            let c = rem.leading_coeff().unwrap().times(&lc_inv);
            let step = Ore::monomial(self.gen, c, m - d);
            rem = rem.checked_sub(&step.checked_mul(divisor)?)?;
            quotient.add_term(m - d, step.leading_coeff().unwrap());
        }
        Ok((quotient, rem))
    }

    /// Rewrite in terms of the other generator using `theta = t d/dt`.
    pub fn to_generator(&self, target: Generator) -> Self {
        if target == self.gen {
            return self.clone();
        }
        // old generator expressed in the target generator
        let image = match target {
            Generator::Ddt => Ore::monomial(target, C::monomial(Scalar::one(), 1), 1),
            Generator::Theta => Ore::monomial(target, C::monomial(Scalar::one(), -1), 1),
        };
        let mut out = Ore::zero(target);
        let mut power = Ore::one(target);
        let mut at = 0;
        for (m, c) in &self.coeffs {
            while at < *m {
                power = power.checked_mul(&image).expect("same generator");
                at += 1;
            }
            out = out
                .checked_add(&power.left_mul_coeff(c))
                .expect("same generator");
        }
        out
    }

    /// Substitute `X -> X + s`, the coefficient-ring automorphism used to
    /// conjugate second-order operators.
    pub fn shift_generator(&self, s: &C) -> Self {
        let image = Ore::from_coeffs(self.gen, [(1, C::one()), (0, s.clone())]);
        let mut out = Ore::zero(self.gen);
        for (m, c) in &self.coeffs {
            out = out
                .checked_add(&image.pow(*m).left_mul_coeff(c))
                .expect("same generator");
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Ore<D> {
        Ore::from_coeffs(self.gen, self.coeffs.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl OreElem {
    /// View as an element of `C(t)[X]`.
    pub fn to_rational(&self) -> RatOreElem {
        self.map_coeffs(RatFunc::from_laurent)
    }

    /// Left multiply by the inverse of the leading unit so the element is
    /// monic. Generates the same left ideal.
    pub fn monic(&self) -> Result<Self> {
        let inv = self
            .leading_coeff()
            .and_then(LaurentPoly::unit_inverse)
            .ok_or(Error::NonUnitLeadingCoeff)?;
        Ok(self.left_mul_coeff(&inv))
    }
}

/// The image of `d_n` in `K`: `t^n theta + n b t^n`.
pub fn make_dn(n: i64, b: &Scalar) -> OreElem {
    let tn = LaurentPoly::monomial(Scalar::one(), n);
    Ore::from_coeffs(
        Generator::Theta,
        [(1, tn.clone()), (0, tn.scale(&(b * &Scalar::from_int(n))))],
    )
}

/// The image of `w_k = -1/2 d_{k-1} d_1 - 1/2 d_{k+1} d_{-1} + d_k d_0` in `K`.
pub fn make_wk(k: i64, b: &Scalar) -> OreElem {
    let half = Scalar::ratio(-1, 2);
    let prod = |i: i64, j: i64| &make_dn(i, b) * &make_dn(j, b);
    let a = prod(k - 1, 1).scale(&half);
    let c = prod(k + 1, -1).scale(&half);
    let d = prod(k, 0);
    &(&a + &c) + &d
}

impl<C: Coeff> fmt::Display for Ore<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = match self.gen {
            Generator::Theta => "Th",
            Generator::Ddt => "Dt",
        };
        for (idx, (m, c)) in self.coeffs.iter().rev().enumerate() {
            let (neg, mag) = c.factor_text();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let power = match m {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{m}"),
            };
            if *m == 0 {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{power}")?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

/// Operator forms panic on a generator mismatch; use the `checked_*`
/// methods when mixing generators is possible.
impl<C: Coeff> Add<&Ore<C>> for &Ore<C> {
    type Output = Ore<C>;
    fn add(self, rhs: &Ore<C>) -> Ore<C> {
        self.checked_add(rhs).expect("generator mismatch")
    }
}

impl<C: Coeff> Sub<&Ore<C>> for &Ore<C> {
    type Output = Ore<C>;
    fn sub(self, rhs: &Ore<C>) -> Ore<C> {
        self.checked_sub(rhs).expect("generator mismatch")
    }
}

impl<C: Coeff> Mul<&Ore<C>> for &Ore<C> {
    type Output = Ore<C>;
    fn mul(self, rhs: &Ore<C>) -> Ore<C> {
        self.checked_mul(rhs).expect("generator mismatch")
    }
}

impl<C: Coeff> Neg for &Ore<C> {
    type Output = Ore<C>;
    fn neg(self) -> Ore<C> {
        self.neg_ref()
    }
}
