//! Exact computer algebra for Laurent differential operators and the
//! Virasoro modules obtained from them by twisting.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`], [`laurent`], [`ratfunc`]: exact coefficient arithmetic over
//!   the Gaussian rationals.
//! - [`ore`]: normal-form arithmetic in `C[t,t^-1][X]` and `C(t)[X]`, right
//!   division, and the operators `D_n(b)` and `w_k`.
//! - [`modules`]: the module families and their `K`- and Virasoro actions.
//! - [`structure`]: bracket and `w_k` verifiers, submodule probes, isomorphism
//!   fingerprints.
//! - [`factor`]: reducibility witnesses and irreducibility certificates for
//!   second-order operators.
//! - [`expr`], [`report`], [`cli`]: parsing, reports, and command dispatch.

pub mod error;
pub mod scalar;
pub mod laurent;
pub mod ratfunc;
pub mod ore;
pub mod modules;
pub mod linalg;
pub mod structure;
pub mod factor;
pub mod expr;
pub mod report;
pub mod suites;
pub mod cli;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use modules::{Family, ModVec, Module, Sym};
pub use ore::{make_dn, make_wk, Ore, OreElem, RatOreElem};
pub use ratfunc::{Poly, RatFunc};
pub use scalar::Scalar;

use serde::{Deserialize, Serialize};

/// Which derivation the Ore generator stands for.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Generator {
    /// `theta = t d/dt`, written `Th`.
    Theta,
    /// `d/dt`, written `Dt`.
    Ddt,
}
