//! Factoring `theta^2 - f` over `C(t)[theta]` for Laurent polynomials `f`.
//!
//! A factorization `theta^2 - f = (theta - g)(theta + g)` exists with
//! `g = h - sum_i a_i/(t - a_i)` whenever `h` is a Laurent polynomial with
//! `h(a_i) = sum_(j != i) a_j/(a_i - a_j) - 1/2`, and then
//!
//! ```text
//! f = h^2 - theta(h) - 2 sum_i a_i (h - h(a_i)) / (t - a_i).
//! ```
//!
//! This module builds such `f`, verifies factorizations by expansion, issues
//! degree-based irreducibility certificates, and searches for witnesses
//! within caller-supplied bounds.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ore::{Ore, OreElem, RatOreElem};
use crate::ratfunc::{Poly, RatFunc};
use crate::scalar::Scalar;
use crate::Generator;

/// Poles `a_i` and the polynomial part `h` of a first-order right factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorWitness {
    pub poles: Vec<Scalar>,
    pub h: LaurentPoly,
}

impl FactorWitness {
    /// `g = h - sum_i a_i/(t - a_i)`.
    pub fn g1(&self) -> RatFunc {
        self.poles.iter().fold(RatFunc::from_laurent(&self.h), |acc, a| {
            &acc + &RatFunc::pole_power(&-a, a, 1)
        })
    }

    /// `(theta - g, theta + g)`.
    pub fn factors(&self) -> (RatOreElem, RatOreElem) {
        let g = self.g1();
        let th = Ore::var(Generator::Theta);
        let gc = Ore::from_coeff(Generator::Theta, g);
        (&th - &gc, &th + &gc)
    }
}

impl fmt::Display for FactorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poles: Vec<String> = self.poles.iter().map(|p| p.to_string()).collect();
        write!(f, "h = {}, poles = [{}]", self.h, poles.join(", "))
    }
}

/// Value `h(a_i)` must take at each pole.
pub fn pole_constraint(poles: &[Scalar], i: usize) -> Result<Scalar> {
    let ai = &poles[i];
    let mut acc = Scalar::ratio(-1, 2);
    for (j, aj) in poles.iter().enumerate() {
        if j != i {
            acc = &acc + &aj.checked_div(&(ai - aj))?;
        }
    }
    Ok(acc)
}

fn validate_poles(poles: &[Scalar]) -> Result<()> {
    if poles.iter().any(Scalar::is_zero) {
        return Err(Error::ZeroPole);
    }
    for (i, a) in poles.iter().enumerate() {
        if poles[..i].contains(a) {
            return Err(Error::DuplicatePoles);
        }
    }
    Ok(())
}

/// `h^2 - theta(h) - 2 sum_i a_i (h - h(a_i))/(t - a_i)`, with no constraint
/// check.
pub fn reducible_polynomial(h: &LaurentPoly, poles: &[Scalar]) -> Result<LaurentPoly> {
    let mut f = &(h * h) - &h.derive(Generator::Theta);
    for a in poles {
        let dq = h.difference_quotient(a)?;
        f = &f - &dq.scale(&(a * &Scalar::from_int(2)));
    }
    Ok(f)
}

/// The polynomial `f` for which `theta^2 - f` factors through `(h, poles)`.
pub fn construct_reducible(h: &LaurentPoly, poles: &[Scalar]) -> Result<(LaurentPoly, FactorWitness)> {
    validate_poles(poles)?;
    for (i, a) in poles.iter().enumerate() {
        if h.eval(a)? != pole_constraint(poles, i)? {
            return Err(Error::ConstraintViolated {
                index: i,
                pole: a.clone(),
            });
        }
    }
    let f = reducible_polynomial(h, poles)?;
    Ok((
        f,
        FactorWitness {
            poles: poles.to_vec(),
            h: h.clone(),
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCheck {
    pub passed: bool,
    /// `(theta - g)(theta + g) - (theta^2 - f)`, printed.
    pub difference: String,
}

/// Expands `(theta - g)(theta + g)` and compares with `theta^2 - f`.
pub fn verify_factorization(f: &LaurentPoly, w: &FactorWitness) -> FactorCheck {
    let (left, right) = w.factors();
    let target = &Ore::var(Generator::Theta).pow(2)
        - &Ore::from_coeff(Generator::Theta, RatFunc::from_laurent(f));
    let diff = &(&left * &right) - &target;
    FactorCheck {
        passed: diff.is_zero(),
        difference: diff.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    /// Top exponent of `f` is odd and positive.
    OddTopDegree(i64),
    /// Bottom exponent of `f` is odd and negative.
    OddBottomDegree(i64),
    /// `f(d/dt) - t` for a nonconstant polynomial `f`.
    PolynomialMinusT(Poly),
}

impl IrreducibilityCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            IrreducibilityCertificate::OddTopDegree(_) => "ODD_TOP_DEGREE",
            IrreducibilityCertificate::OddBottomDegree(_) => "ODD_BOTTOM_DEGREE",
            IrreducibilityCertificate::PolynomialMinusT(_) => "POLYNOMIAL_MINUS_T",
        }
    }

    pub fn data(&self) -> String {
        match self {
            IrreducibilityCertificate::OddTopDegree(d) | IrreducibilityCertificate::OddBottomDegree(d) => {
                d.to_string()
            }
            IrreducibilityCertificate::PolynomialMinusT(p) => p.to_laurent().to_string(),
        }
    }
}

/// A certificate that `theta^2 - f` is irreducible in `C(t)[theta]` when the
/// top exponent of `f` is odd and positive or the bottom exponent is odd and
/// negative. `None` is not a reducibility claim.
pub fn irreducible_by_degree(f: &LaurentPoly) -> Option<IrreducibilityCertificate> {
    let top = f.max_exp()?;
    let bottom = f.min_exp()?;
    if top > 0 && top % 2 != 0 {
        Some(IrreducibilityCertificate::OddTopDegree(top))
    } else if bottom < 0 && bottom % 2 != 0 {
        Some(IrreducibilityCertificate::OddBottomDegree(bottom))
    } else {
        None
    }
}

/// `theta(f1) + f1^2 - f2`: `theta^2 + 2 f1 theta + f2` is irreducible iff
/// `theta^2 - F` is.
pub fn complete_square(f1: &LaurentPoly, f2: &LaurentPoly) -> LaurentPoly {
    &(&f1.derive(Generator::Theta) + &(f1 * f1)) - f2
}

/// Factors of `theta^2 + 2 f1 theta + f2` obtained from a witness for
/// `theta^2 - F` by substituting `theta -> theta + f1`.
pub fn transport_factors(f1: &LaurentPoly, w: &FactorWitness) -> (RatOreElem, RatOreElem) {
    let (left, right) = w.factors();
    let s = RatFunc::from_laurent(f1);
    (left.shift_generator(&s), right.shift_generator(&s))
}

/// Expands the transported factors and compares with
/// `theta^2 + 2 f1 theta + f2`.
pub fn verify_transport(f1: &LaurentPoly, f2: &LaurentPoly, w: &FactorWitness) -> bool {
    let (left, right) = transport_factors(f1, w);
    let rf = |p: &LaurentPoly| RatFunc::from_laurent(p);
    let target: RatOreElem = Ore::from_coeffs(
        Generator::Theta,
        [(2, RatFunc::one()), (1, rf(&f1.scale(&Scalar::from_int(2)))), (0, rf(f2))],
    );
    &left * &right == target
}

/// `f(d/dt) - t` with its certificate. `f` is given low coefficient first.
pub fn polynomial_minus_t(f: &Poly) -> Result<(IrreducibilityCertificate, OreElem)> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let beta = Ore::from_coeffs(
        Generator::Ddt,
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| (j as u32, LaurentPoly::constant(c.clone()))),
    );
    let beta = &beta - &Ore::from_coeff(Generator::Ddt, LaurentPoly::t());
    Ok((IrreducibilityCertificate::PolynomialMinusT(f.clone()), beta))
}

/// Parameters of a bounded witness search.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub pole_candidates: Vec<Scalar>,
    /// Inclusive exponent bounds for `h`.
    pub h_bounds: (i64, i64),
    /// Values tried for a coefficient that degree matching leaves free.
    pub coeff_box: Vec<Scalar>,
    /// Maximum number of `(pole subset, branch)` pairs examined.
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { witness: FactorWitness, subsets: u64 },
    /// No witness within the bounds. Not an irreducibility proof.
    NotFound { explored: u64, subsets: u64 },
}

const MAX_CANDIDATES: usize = 20;

fn subset(cands: &[Scalar], mask: u64) -> Vec<Scalar> {
    cands
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, a)| a.clone())
        .collect()
}

/// The exponent range `h` must occupy if any witness exists, from the top
/// and bottom exponents of `f`. `None` when an exponent is odd.
fn forced_range(f: &LaurentPoly) -> Option<(i64, i64)> {
    let top = f.max_exp().unwrap_or(0);
    let bottom = f.min_exp().unwrap_or(0);
    let hi = if top > 0 {
        (top % 2 == 0).then_some(top / 2)?
    } else {
        0
    };
    let lo = if bottom < 0 {
        (bottom % 2 == 0).then_some(bottom / 2)?
    } else {
        0
    };
    Some((lo, hi))
}

/// Solves for the coefficient of `t^exp` in `h` so that the degree-`deg`
/// coefficient of the right side matches `f`, assuming it enters linearly.
fn solve_linear(
    f: &LaurentPoly,
    h: &LaurentPoly,
    poles: &[Scalar],
    exp: i64,
    deg: i64,
) -> Result<Option<Scalar>> {
    let residual = |x: &Scalar| -> Result<Scalar> {
        let trial = &h.clone() + &LaurentPoly::monomial(x.clone(), exp);
        Ok(&f.coeff(deg) - &reducible_polynomial(&trial, poles)?.coeff(deg))
    };
    let r0 = residual(&Scalar::zero())?;
    let slope = &residual(&Scalar::one())? - &r0;
    if slope.is_zero() {
        return Ok(None);
    }
    Ok(Some(-(r0.checked_div(&slope)?)))
}

/// Candidate `h` for one pole set and one choice of square-root signs.
fn forced_h(
    f: &LaurentPoly,
    poles: &[Scalar],
    (lo, hi): (i64, i64),
    signs: (bool, bool),
    coeff_box: &[Scalar],
) -> Result<Vec<LaurentPoly>> {
    let sign = |s: Scalar, neg: bool| if neg { -s } else { s };
    let mut h = LaurentPoly::zero();
    if hi > 0 {
        let Some(top) = f.coeff(2 * hi).sqrt_exact() else {
            return Ok(vec![]);
        };
        h = LaurentPoly::monomial(sign(top, signs.0), hi);
        for exp in (1..hi).rev() {
            match solve_linear(f, &h, poles, exp, hi + exp)? {
                Some(x) => h = &h + &LaurentPoly::monomial(x, exp),
                None => return Ok(vec![]),
            }
        }
    }
    if lo < 0 {
        let Some(bottom) = f.coeff(2 * lo).sqrt_exact() else {
            return Ok(vec![]);
        };
        h = &h + &LaurentPoly::monomial(sign(bottom, signs.1), lo);
        for exp in lo + 1..0 {
            match solve_linear(f, &h, poles, exp, lo + exp)? {
                Some(x) => h = &h + &LaurentPoly::monomial(x, exp),
                None => return Ok(vec![]),
            }
        }
    }
    // constant term: linear at degree hi (or lo) unless h is constant
    let deg = if hi > 0 { hi } else { lo };
    if hi > 0 || lo < 0 {
        if let Some(x) = solve_linear(f, &h, poles, 0, deg)? {
            return Ok(vec![&h + &LaurentPoly::constant(x)]);
        }
    }
    let mut out: Vec<LaurentPoly> = Vec::new();
    if hi == 0 && lo == 0 {
        if let Some(r) = f.coeff(0).sqrt_exact() {
            out.push(LaurentPoly::constant(sign(r, signs.0)));
        }
    }
    for c in coeff_box {
        out.push(&h + &LaurentPoly::constant(c.clone()));
    }
    Ok(out)
}

fn within(h: &LaurentPoly, (lo, hi): (i64, i64)) -> bool {
    h.min_exp().is_none_or(|m| m >= lo) && h.max_exp().is_none_or(|m| m <= hi)
}

fn admissible(f: &LaurentPoly, h: &LaurentPoly, poles: &[Scalar]) -> Result<bool> {
    for (i, a) in poles.iter().enumerate() {
        if h.eval(a)? != pole_constraint(poles, i)? {
            return Ok(false);
        }
    }
    Ok(&reducible_polynomial(h, poles)? == f)
}

fn search_subset(
    f: &LaurentPoly,
    spec: &SearchSpec,
    sign_choices: &[(bool, bool)],
    range: (i64, i64),
    mask: u64,
) -> Result<Option<FactorWitness>> {
    let poles = subset(&spec.pole_candidates, mask);
    for signs in sign_choices {
        for h in forced_h(f, &poles, range, *signs, &spec.coeff_box)? {
            if within(&h, spec.h_bounds) && admissible(f, &h, &poles)? {
                let w = FactorWitness {
                    poles: poles.clone(),
                    h,
                };
                if verify_factorization(f, &w).passed {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Bounded search for a witness `(h, poles)` with poles drawn from the
/// candidates. Pole subsets are tried in increasing bitmask order and the
/// first verified witness in that order is returned, independent of thread
/// scheduling.
pub fn search_witness(f: &LaurentPoly, spec: &SearchSpec) -> Result<SearchOutcome> {
    let cands = &spec.pole_candidates;
    if cands.len() > MAX_CANDIDATES {
        return Err(Error::Usage(format!("at most {MAX_CANDIDATES} pole candidates")));
    }
    validate_poles(cands)?;
    let total_subsets = 1u64 << cands.len();
    let Some(range) = forced_range(f) else {
        return Ok(SearchOutcome::NotFound {
            explored: 0,
            subsets: 0,
        });
    };
    let (lo, hi) = spec.h_bounds;
    if range.0 < lo || range.1 > hi {
        return Ok(SearchOutcome::NotFound {
            explored: 0,
            subsets: 0,
        });
    }
    let sign_choices: Vec<(bool, bool)> = {
        let a: &[bool] = if range.1 > 0 || range == (0, 0) { &[false, true] } else { &[false] };
        let b: &[bool] = if range.0 < 0 { &[false, true] } else { &[false] };
        a.iter().flat_map(|x| b.iter().map(move |y| (*x, *y))).collect()
    };
    let per_subset = sign_choices.len() as u64;
    let allowed = (spec.budget / per_subset).min(total_subsets);
    let found = (0..allowed)
        .into_par_iter()
        .map(|mask| -> (u64, Result<Option<FactorWitness>>) {
            (mask, search_subset(f, spec, &sign_choices, range, mask))
        })
        .find_first(|(_, r)| !matches!(r, Ok(None)));
    match found {
        Some((_, Err(e))) => Err(e),
        Some((mask, Ok(Some(witness)))) => Ok(SearchOutcome::Found {
            witness,
            subsets: mask + 1,
        }),
        _ if allowed < total_subsets => Err(Error::BudgetExceeded {
            budget: spec.budget,
            explored: allowed * per_subset,
            subsets: allowed,
        }),
        _ => Ok(SearchOutcome::NotFound {
            explored: allowed * per_subset,
            subsets: allowed,
        }),
    }
}
