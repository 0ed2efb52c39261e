//! Module families over `K = C[t,t^-1][theta]` and their twisted Virasoro
//! actions `d_n -> t^n theta + n b t^n`.
//!
//! Vectors are sparse combinations of basis symbols ([`Sym`]); a [`Module`]
//! interprets them. Each family has its own basis:
//!
//! | family      | symbols                                   |
//! |-------------|-------------------------------------------|
//! | `Omega`     | `E(k)` = `theta^k`, `k >= 0`              |
//! | `KQuotient` | `B(k, m)` = `t^k X^m`, `0 <= m < deg beta` |
//! | `Fraction`  | `T(k)` = `t^k`, `P(i, j)` = `(t - a_i)^-j` |
//! | `Natural`   | `T(k)` = `t^k`                            |
//! | `VPrime00`  | `T(k)`, `k != 0`                          |

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ore::{make_dn, Ore, OreElem};
use crate::ratfunc::{Poly, RatFunc};
use crate::scalar::Scalar;
use crate::Generator;

pub mod tables;

/// A basis symbol. Which symbols are legal depends on the module family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Sym {
    E(u32),
    B(i64, u32),
    T(i64),
    P(u32, u32),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::E(k) => write!(f, "E({k})"),
            Sym::B(k, m) => write!(f, "B({k},{m})"),
            Sym::T(k) => write!(f, "T({k})"),
            Sym::P(i, j) => write!(f, "P({i},{j})"),
        }
    }
}

/// A finite linear combination of basis symbols with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ModVec {
    terms: BTreeMap<Sym, Scalar>,
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec::default()
    }

    pub fn basis(sym: Sym) -> Self {
        ModVec::term(sym, Scalar::one())
    }

    pub fn term(sym: Sym, c: Scalar) -> Self {
        let mut v = ModVec::zero();
        v.add_term(sym, &c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (Sym, Scalar)>>(iter: I) -> Self {
        let mut v = ModVec::zero();
        for (s, c) in iter {
            v.add_term(s, &c);
        }
        v
    }

    pub fn add_term(&mut self, sym: Sym, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(sym).or_insert_with(Scalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&sym);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, sym: &Sym) -> Scalar {
        self.terms.get(sym).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Sym, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Sym> + '_ {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return ModVec::zero();
        }
        ModVec {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &ModVec, s: &Scalar) {
        for (k, c) in &other.terms {
            self.add_term(*k, &(c * s));
        }
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (sym, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_literal();
            let mag = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{mag}*{sym}")?;
            }
        }
        Ok(())
    }
}

impl Add<&ModVec> for &ModVec {
    type Output = ModVec;
    fn add(self, rhs: &ModVec) -> ModVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub<&ModVec> for &ModVec {
    type Output = ModVec;
    fn sub(self, rhs: &ModVec) -> ModVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

/// The `K`-module underlying a twisted Virasoro module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// `C[theta]` with `t^i theta^k = lambda^i (theta - i)^k`.
    Omega { lambda: Scalar },
    /// `K / K beta`; `beta` is stored monic in its own generator.
    KQuotient { beta: OreElem },
    /// The localization `C[t, t^-1, (t - a_i)^-1]` with
    /// `d/dt . f = f' + f sum_i alpha_i / (t - a_i)`.
    Fraction { poles: Vec<Scalar>, alphas: Vec<Scalar> },
    /// `C[t, t^-1]` with `theta` acting as the derivation.
    Natural,
    /// `C[t, t^-1] / C` with `d_k t^n = n t^(k+n)`; not a `K`-module.
    VPrime00,
}

/// A module descriptor: a family together with its twist `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Module {
    family: Family,
    twist: Option<Scalar>,
}

impl Module {
    pub fn omega(lambda: Scalar, b: Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidModule("lambda must be nonzero".into()));
        }
        Ok(Module {
            family: Family::Omega { lambda },
            twist: Some(b),
        })
    }

    /// `K / K beta`. The leading coefficient of `beta` must be a unit and
    /// `deg beta >= 1`.
    pub fn kquotient(beta: OreElem, b: Scalar) -> Result<Self> {
        if beta.degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidModule("beta must have degree >= 1".into()));
        }
        let beta = beta.monic()?;
        Ok(Module {
            family: Family::KQuotient { beta },
            twist: Some(b),
        })
    }

    /// The intermediate-series construction `K / K(theta - alpha)`.
    pub fn intermediate_series(alpha: LaurentPoly, b: Scalar) -> Result<Self> {
        let beta = Ore::from_coeffs(Generator::Theta, [(1, LaurentPoly::one()), (0, -alpha)]);
        Module::kquotient(beta, b)
    }

    pub fn fraction(poles: Vec<Scalar>, alphas: Vec<Scalar>, b: Scalar) -> Result<Self> {
        if poles.len() != alphas.len() {
            return Err(Error::InvalidModule(
                "poles and alphas must have equal length".into(),
            ));
        }
        for (i, a) in poles.iter().enumerate() {
            if poles[..i].contains(a) {
                return Err(Error::InvalidModule("poles must be pairwise distinct".into()));
            }
        }
        Ok(Module {
            family: Family::Fraction { poles, alphas },
            twist: Some(b),
        })
    }

    pub fn natural(b: Scalar) -> Self {
        Module {
            family: Family::Natural,
            twist: Some(b),
        }
    }

    pub fn vprime00() -> Self {
        Module {
            family: Family::VPrime00,
            twist: None,
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn twist(&self) -> Option<&Scalar> {
        self.twist.as_ref()
    }

    pub fn b(&self) -> Result<&Scalar> {
        self.twist.as_ref().ok_or(Error::NoTwist)
    }

    /// Same module data with a different twist.
    pub fn with_twist(&self, b: Scalar) -> Result<Self> {
        match self.family {
            Family::VPrime00 => Err(Error::NoTwist),
            _ => Ok(Module {
                family: self.family.clone(),
                twist: Some(b),
            }),
        }
    }

    pub fn is_legal(&self, sym: &Sym) -> bool {
        match (&self.family, sym) {
            (Family::Omega { .. }, Sym::E(_)) => true,
            (Family::KQuotient { beta }, Sym::B(_, m)) => *m < beta.degree().unwrap_or(0),
            (Family::Natural, Sym::T(_)) => true,
            (Family::VPrime00, Sym::T(k)) => *k != 0,
            (Family::Fraction { .. }, Sym::T(_)) => true,
            (Family::Fraction { poles, .. }, Sym::P(i, j)) => {
                *j >= 1 && poles.get(*i as usize).is_some_and(|a| !a.is_zero())
            }
            _ => false,
        }
    }

    pub fn check_vec(&self, v: &ModVec) -> Result<()> {
        match v.support().find(|s| !self.is_legal(s)) {
            Some(s) => Err(Error::IllegalSymbol(s.to_string())),
            None => Ok(()),
        }
    }

    /// The first `count` basis symbols in canonical order. For `Omega` this
    /// is `E(0), E(1), ...`; the integer-indexed families alternate
    /// `0, 1, -1, 2, -2, ...`.
    pub fn basis(&self, count: usize) -> Vec<Sym> {
        let zigzag = |r: u64| -> i64 {
            if r == 0 {
                0
            } else if r % 2 == 1 {
                r.div_ceil(2) as i64
            } else {
                -((r / 2) as i64)
            }
        };
        let mut out = Vec::with_capacity(count);
        match &self.family {
            Family::Omega { .. } => out.extend((0..count as u32).map(Sym::E)),
            Family::Natural => out.extend((0..count as u64).map(|r| Sym::T(zigzag(r)))),
            Family::VPrime00 => out.extend((1..=count as u64).map(|r| Sym::T(zigzag(r)))),
            Family::KQuotient { beta } => {
                let d = beta.degree().unwrap_or(1);
                let mut r = 0;
                while out.len() < count {
                    for m in 0..d {
                        out.push(Sym::B(zigzag(r), m));
                    }
                    r += 1;
                }
                out.truncate(count);
            }
            Family::Fraction { poles, .. } => {
                let nonzero: Vec<u32> = (0..poles.len() as u32)
                    .filter(|i| !poles[*i as usize].is_zero())
                    .collect();
                out.push(Sym::T(0));
                let mut r = 1;
                while out.len() < count {
                    out.push(Sym::T(r));
                    out.push(Sym::T(-r));
                    out.extend(nonzero.iter().map(|i| Sym::P(*i, r as u32)));
                    r += 1;
                }
                out.truncate(count);
            }
        }
        out
    }

    /// The action of an element of `K`.
    pub fn k_act(&self, x: &OreElem, v: &ModVec) -> Result<ModVec> {
        self.check_vec(v)?;
        match &self.family {
            Family::Omega { lambda } => Ok(omega_k_act(lambda, x, v)),
            Family::KQuotient { beta } => kquotient_act(beta, x, v),
            Family::Natural => Ok(natural_k_act(x, v)),
            Family::Fraction { poles, alphas } => {
                let r = fraction_to_ratfunc(poles, v);
                let x = x.to_generator(Generator::Ddt);
                let conn = connection(poles, alphas);
                let mut out = RatFunc::zero();
                let mut power = r;
                let mut at = 0;
                for (m, c) in x.terms() {
                    while at < m {
                        power = &power.derive(Generator::Ddt) + &(&power * &conn);
                        at += 1;
                    }
                    out = &out + &(&RatFunc::from_laurent(c) * &power);
                }
                fraction_from_ratfunc(poles, &out)
            }
            Family::VPrime00 => Err(Error::NoKAction),
        }
    }

    /// The action of `t^m`, which is the same in `K` and in the twisted module.
    pub fn t_act(&self, m: i64, v: &ModVec) -> Result<ModVec> {
        self.k_act(&Ore::t_power(Generator::Theta, m), v)
    }

    /// `d_n . v` with the central element acting as zero.
    pub fn vir_act(&self, n: i64, v: &ModVec) -> Result<ModVec> {
        match &self.family {
            Family::VPrime00 => vprime_act(n, v),
            _ => self.k_act(&make_dn(n, self.b()?), v),
        }
    }

    /// `d_n . v` on a fraction module by the closed form
    /// `t^(n+1) (v' + v sum alpha_i/(t - a_i)) + n b t^n v`.
    pub fn fraction_act(&self, n: i64, v: &ModVec) -> Result<ModVec> {
        let Family::Fraction { poles, alphas } = &self.family else {
            return Err(Error::InvalidModule("fraction_act needs a fraction module".into()));
        };
        self.check_vec(v)?;
        let b = self.b()?;
        let r = fraction_to_ratfunc(poles, v);
        let conn = connection(poles, alphas);
        let inner = &r.derive(Generator::Ddt) + &(&r * &conn);
        let tn1 = RatFunc::from_laurent(&LaurentPoly::monomial(Scalar::one(), n + 1));
        let tn = RatFunc::from_laurent(&LaurentPoly::monomial(b * &Scalar::from_int(n), n));
        let out = &(&tn1 * &inner) + &(&tn * &r);
        fraction_from_ratfunc(poles, &out)
    }

    /// The rational function a fraction-module vector stands for.
    pub fn fraction_value(&self, v: &ModVec) -> Result<RatFunc> {
        let Family::Fraction { poles, .. } = &self.family else {
            return Err(Error::InvalidModule("not a fraction module".into()));
        };
        self.check_vec(v)?;
        Ok(fraction_to_ratfunc(poles, v))
    }

    /// Partial-fraction coordinates of a rational function in a fraction module.
    pub fn fraction_vector(&self, r: &RatFunc) -> Result<ModVec> {
        let Family::Fraction { poles, .. } = &self.family else {
            return Err(Error::InvalidModule("not a fraction module".into()));
        };
        fraction_from_ratfunc(poles, r)
    }

    /// Whether `theta A = A`, where that is decidable: `Omega` and `Natural`
    /// never; `K/K(theta - alpha)` with constant `alpha` iff `alpha` is not an
    /// integer. `None` when unknown.
    pub fn theta_surjective(&self) -> Option<bool> {
        match &self.family {
            Family::Omega { .. } | Family::Natural => Some(false),
            Family::KQuotient { .. } => {
                let alpha = self.intermediate_alpha()?.as_constant()?;
                Some(alpha.as_i64().is_none())
            }
            _ => None,
        }
    }

    /// For a degree-one quotient `K/K(theta - alpha)`, the Laurent polynomial
    /// `alpha`.
    pub fn intermediate_alpha(&self) -> Option<LaurentPoly> {
        let Family::KQuotient { beta } = &self.family else {
            return None;
        };
        if beta.degree() != Some(1) {
            return None;
        }
        let theta = beta.to_generator(Generator::Theta).monic().ok()?;
        Some(-theta.coeff(0))
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self
            .twist
            .as_ref()
            .map(|b| b.to_string())
            .unwrap_or_default();
        match &self.family {
            Family::Omega { lambda } => write!(f, "omega(lambda={lambda}, b={b})"),
            Family::KQuotient { beta } => write!(f, "kquotient(beta={beta}, b={b})"),
            Family::Fraction { poles, alphas } => {
                let join = |v: &[Scalar]| {
                    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
                };
                write!(
                    f,
                    "fraction(poles=[{}], alphas=[{}], b={b})",
                    join(poles),
                    join(alphas)
                )
            }
            Family::Natural => write!(f, "natural(b={b})"),
            Family::VPrime00 => write!(f, "vprime00"),
        }
    }
}

fn binom(n: u32, k: u32) -> Scalar {
    let mut acc = Scalar::one();
    for j in 0..k {
        acc = (&acc * &Scalar::from_int((n - j) as i64))
            .checked_div(&Scalar::from_int((j + 1) as i64))
            .unwrap();
    }
    acc
}

/// `t^i . theta^k = lambda^i (theta - i)^k` in the `E` basis.
fn omega_t_power(lambda: &Scalar, i: i64, k: u32) -> ModVec {
    let li = lambda.pow(i).expect("lambda is nonzero");
    let shift = Scalar::from_int(-i);
    let mut out = ModVec::zero();
    for l in 0..=k {
        let c = &(&binom(k, l) * &shift.pow((k - l) as i64).unwrap()) * &li;
        out.add_term(Sym::E(l), &c);
    }
    out
}

fn omega_k_act(lambda: &Scalar, x: &OreElem, v: &ModVec) -> ModVec {
    let x = x.to_generator(Generator::Theta);
    let mut out = ModVec::zero();
    for (sym, s) in v.terms() {
        let Sym::E(k) = sym else { unreachable!() };
        for (m, c) in x.terms() {
            for (i, ci) in c.terms() {
                out.add_scaled(&omega_t_power(lambda, i, k + m), &(s * ci));
            }
        }
    }
    out
}

fn natural_k_act(x: &OreElem, v: &ModVec) -> ModVec {
    let x = x.to_generator(Generator::Theta);
    let mut out = ModVec::zero();
    for (sym, s) in v.terms() {
        let Sym::T(k) = sym else { unreachable!() };
        let kk = Scalar::from_int(*k);
        for (m, c) in x.terms() {
            let eig = &kk.pow(m as i64).unwrap() * s;
            for (i, ci) in c.terms() {
                out.add_term(Sym::T(i + k), &(ci * &eig));
            }
        }
    }
    out
}

fn kquotient_rep(gen: Generator, v: &ModVec) -> OreElem {
    let mut by_degree: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    for (sym, c) in v.terms() {
        let Sym::B(k, m) = sym else { unreachable!() };
        let entry = by_degree.entry(*m).or_default();
        *entry = &*entry + &LaurentPoly::monomial(c.clone(), *k);
    }
    Ore::from_coeffs(gen, by_degree)
}

fn kquotient_act(beta: &OreElem, x: &OreElem, v: &ModVec) -> Result<ModVec> {
    let gen = beta.gen();
    let prod = x.to_generator(gen).checked_mul(&kquotient_rep(gen, v))?;
    let (_, rem) = prod.right_divide(beta)?;
    let mut out = ModVec::zero();
    for (m, c) in rem.terms() {
        for (k, ck) in c.terms() {
            out.add_term(Sym::B(k, m), ck);
        }
    }
    Ok(out)
}

fn vprime_act(k: i64, v: &ModVec) -> Result<ModVec> {
    let mut out = ModVec::zero();
    for (sym, s) in v.terms() {
        match sym {
            Sym::T(n) if *n != 0 => {
                if k + n != 0 {
                    out.add_term(Sym::T(k + n), &(s * &Scalar::from_int(*n)));
                }
            }
            other => return Err(Error::IllegalSymbol(other.to_string())),
        }
    }
    Ok(out)
}

/// `sum_i alpha_i / (t - a_i)`.
fn connection(poles: &[Scalar], alphas: &[Scalar]) -> RatFunc {
    poles
        .iter()
        .zip(alphas)
        .fold(RatFunc::zero(), |acc, (a, al)| {
            &acc + &RatFunc::pole_power(al, a, 1)
        })
}

fn fraction_to_ratfunc(poles: &[Scalar], v: &ModVec) -> RatFunc {
    let mut laurent = LaurentPoly::zero();
    let mut out = RatFunc::zero();
    for (sym, c) in v.terms() {
        match sym {
            Sym::T(k) => laurent = &laurent + &LaurentPoly::monomial(c.clone(), *k),
            Sym::P(i, j) => out = &out + &RatFunc::pole_power(c, &poles[*i as usize], *j),
            _ => unreachable!("checked by check_vec"),
        }
    }
    &out + &RatFunc::from_laurent(&laurent)
}

/// Multiplicity of `z` as a root of `p`, with the cofactor.
fn root_multiplicity(p: &Poly, z: &Scalar) -> (u32, Poly) {
    let lin = Poly::linear(z);
    let mut cur = p.clone();
    let mut e = 0;
    while !cur.is_zero() && cur.eval(z).is_zero() {
        cur = cur.div_rem(&lin).expect("nonzero divisor").0;
        e += 1;
    }
    (e, cur)
}

fn fraction_from_ratfunc(poles: &[Scalar], r: &RatFunc) -> Result<ModVec> {
    let mut rest = r.clone();
    let mut out = ModVec::zero();
    let points = std::iter::once((None, Scalar::zero())).chain(
        poles
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (Some(i as u32), a.clone())),
    );
    for (idx, z) in points {
        loop {
            let (e, cofactor) = root_multiplicity(rest.den(), &z);
            if e == 0 {
                break;
            }
            let c = rest.num().eval(&z).checked_div(&cofactor.eval(&z))?;
            let sym = match idx {
                None => Sym::T(-(e as i64)),
                Some(i) => Sym::P(i, e),
            };
            out.add_term(sym, &c);
            rest = &rest - &RatFunc::pole_power(&c, &z, e);
        }
    }
    if rest.den() != &Poly::one() {
        return Err(Error::LeftLocalizedRing(r.to_string()));
    }
    for (k, c) in rest.num().coeffs().iter().enumerate() {
        out.add_term(Sym::T(k as i64), c);
    }
    Ok(out)
}

/// `d_n . theta^k = lambda^n (theta + n(b - 1)) (theta - n)^k` expanded in
/// the `E` basis.
pub fn omega_closed_form(n: i64, k: u32, lambda: &Scalar, b: &Scalar) -> Result<ModVec> {
    if lambda.is_zero() {
        return Err(Error::InvalidModule("lambda must be nonzero".into()));
    }
    let ln = lambda.pow(n)?;
    let shift = Scalar::from_int(-n);
    let offset = &Scalar::from_int(n) * &(b - &Scalar::one());
    // (theta - n)^k coefficients
    let base: Vec<Scalar> = (0..=k)
        .map(|l| &binom(k, l) * &shift.pow((k - l) as i64).unwrap())
        .collect();
    let mut out = ModVec::zero();
    for (l, c) in base.iter().enumerate() {
        out.add_term(Sym::E(l as u32 + 1), &(c * &ln));
        out.add_term(Sym::E(l as u32), &(&(c * &offset) * &ln));
    }
    Ok(out)
}

/// The isomorphism `theta A_1 -> C[t,t^-1]/C`, `theta t^n -> t^n / n`, for
/// the natural module twisted by `b = 1`.
pub fn theta_to_vprime(v: &ModVec) -> Result<ModVec> {
    let mut out = ModVec::zero();
    for (sym, c) in v.terms() {
        match sym {
            Sym::T(0) => return Err(Error::NotInSubmodule(v.to_string())),
            Sym::T(n) => out.add_term(Sym::T(*n), &c.checked_div(&Scalar::from_int(*n))?),
            other => return Err(Error::IllegalSymbol(other.to_string())),
        }
    }
    Ok(out)
}

/// The isomorphism `theta C[theta] -> Omega(lambda, 0)`, `theta v -> v`, on
/// the submodule `theta C[theta]` of `Omega(lambda, 1)`.
pub fn omega_submodule_map(v: &ModVec) -> Result<ModVec> {
    let mut out = ModVec::zero();
    for (sym, c) in v.terms() {
        match sym {
            Sym::E(0) => return Err(Error::NotInSubmodule(v.to_string())),
            Sym::E(k) => out.add_term(Sym::E(k - 1), c),
            other => return Err(Error::IllegalSymbol(other.to_string())),
        }
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests;
