//! Closed-form Virasoro actions on the standard quotient modules, written out
//! by hand rather than through Ore division. Used to cross-check
//! [`Module::vir_act`](super::Module::vir_act).

use super::{ModVec, Sym};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

/// `d_k . t^n = (alpha + n + k b) t^(k+n)` in `K/K(theta - alpha)`.
pub fn intermediate_series(alpha: &LaurentPoly, b: &Scalar, k: i64, n: i64) -> ModVec {
    let c = &Scalar::from_int(n) + &(b * &Scalar::from_int(k));
    let mut out = ModVec::term(Sym::B(k + n, 0), c);
    for (j, a) in alpha.terms() {
        out.add_term(Sym::B(j + k + n, 0), a);
    }
    out
}

/// `d_k . (t^n theta^s)` in `K/K(theta^2 - f)`, `s` in `{0, 1}`:
///
/// - `d_k . t^n = t^(k+n) (n + k b + theta)`
/// - `d_k . t^n theta = t^(k+n) (f + (n + k b) theta)`
pub fn quadratic(f: &LaurentPoly, b: &Scalar, k: i64, n: i64, s: u32) -> ModVec {
    let c = &Scalar::from_int(n) + &(b * &Scalar::from_int(k));
    match s {
        0 => {
            let mut out = ModVec::term(Sym::B(k + n, 0), c);
            out.add_term(Sym::B(k + n, 1), &Scalar::one());
            out
        }
        1 => {
            let mut out = ModVec::term(Sym::B(k + n, 1), c);
            for (j, a) in f.terms() {
                out.add_term(Sym::B(j + k + n, 0), a);
            }
            out
        }
        _ => panic!("quadratic quotient has no theta^{s} basis vector"),
    }
}

/// `d_k . (t^r D^s)` in `K/K(D^order - t)` with `D = d/dt`:
///
/// - `s < order - 1`: `(r + b k) t^(k+r) D^s + t^(k+r+1) D^(s+1)`
/// - `s = order - 1`: `(r + b k) t^(k+r) D^s + t^(k+r+2)`
pub fn power_minus_t(order: u32, b: &Scalar, k: i64, r: i64, s: u32) -> ModVec {
    assert!(s < order, "s must be below the order");
    let c = &Scalar::from_int(r) + &(b * &Scalar::from_int(k));
    let mut out = ModVec::term(Sym::B(k + r, s), c);
    if s + 1 < order {
        out.add_term(Sym::B(k + r + 1, s + 1), &Scalar::one());
    } else {
        out.add_term(Sym::B(k + r + 2, 0), &Scalar::one());
    }
    out
}
