//! Seeded randomized identity suites.
//!
//! Samples are drawn sequentially from a ChaCha8 stream, then checked in
//! parallel with an order-preserving collect, so a report depends only on
//! the seed and the sample count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expr::parse_module;
use crate::laurent::LaurentPoly;
use crate::modules::{theta_to_vprime, ModVec, Module, Sym};
use crate::ore::{make_dn, make_wk, Ore};
use crate::scalar::Scalar;
use crate::structure::{recover_c, recover_t_action};
use crate::Generator;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub cases: u64,
    pub samples: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Per-sample outcome: number of cases checked and the first failure.
type Outcome = (u64, Option<String>);

fn assemble(suite: &str, seed: u64, samples: Vec<String>, outcomes: Vec<Outcome>) -> SuiteReport {
    let cases = outcomes.iter().map(|(c, _)| c).sum();
    let counterexample = outcomes.into_iter().find_map(|(_, cx)| cx);
    SuiteReport {
        suite: suite.to_string(),
        seed,
        passed: counterexample.is_none(),
        cases,
        samples,
        note: None,
        counterexample,
    }
}

/// A rational `p/q` with `|p| <= 12`, `1 <= q <= 7`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::ratio(rng.gen_range(-12..=12), rng.gen_range(1..=7))
}

fn draw_twists(seed: u64, samples: usize, avoid_degenerate: bool) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let b = random_rational(&mut rng);
        if avoid_degenerate && (b.is_zero() || b.is_one()) {
            continue;
        }
        out.push(b);
    }
    out
}

/// `[D_m(b), D_n(b)] = (n - m) D_(m+n)(b)` in `K` for `|m|, |n| <= range`.
pub fn virasoro_in_k(seed: u64, samples: usize, range: i64) -> SuiteReport {
    let bs = draw_twists(seed, samples, false);
    let outcomes = bs
        .par_iter()
        .map(|b| {
            let mut cases = 0;
            for m in -range..=range {
                for n in -range..=range {
                    cases += 1;
                    let lhs = make_dn(m, b).bracket(&make_dn(n, b)).expect("same generator");
                    let rhs = make_dn(m + n, b).scale(&Scalar::from_int(n - m));
                    if lhs != rhs {
                        return (cases, Some(format!("b={b} m={m} n={n}: {lhs} != {rhs}")));
                    }
                }
            }
            (cases, None)
        })
        .collect();
    assemble("virasoro-in-k", seed, bs.iter().map(Scalar::to_string).collect(), outcomes)
}

/// `w_k = b(b-1) t^k` in `K` for `|k| <= k_range`.
pub fn wk_identity(seed: u64, samples: usize, k_range: i64) -> SuiteReport {
    let bs = draw_twists(seed, samples, false);
    let outcomes = bs
        .par_iter()
        .map(|b| {
            let c = b * &(b - &Scalar::one());
            let mut cases = 0;
            for k in -k_range..=k_range {
                cases += 1;
                let lhs = make_wk(k, b);
                let rhs = Ore::from_coeff(Generator::Theta, LaurentPoly::monomial(c.clone(), k));
                if lhs != rhs {
                    return (cases, Some(format!("b={b} k={k}: {lhs} != {rhs}")));
                }
            }
            (cases, None)
        })
        .collect();
    let mut r = assemble("wk-identity", seed, bs.iter().map(Scalar::to_string).collect(), outcomes);
    r.note = Some(
        "each coefficient of w_k - b(b-1)t^k is a polynomial of degree at most 2 in b, \
         so agreement at 3 distinct b already proves it for all b"
            .into(),
    );
    r
}

/// Module templates used by the recovery suite; `{b}` is substituted.
pub const RECOVERY_FAMILIES: [&str; 7] = [
    "omega(lambda=2, b={b})",
    "omega(lambda=1+i, b={b})",
    "natural(b={b})",
    "kquotient(beta=Th - 2 - t, b={b})",
    "kquotient(beta=Th^2 - t^2 + t, b={b})",
    "kquotient(beta=Dt^2 - t, b={b})",
    "fraction(poles=[1], alphas=[1], b={b})",
];

fn random_vector(rng: &mut ChaCha8Rng, basis: &[Sym]) -> ModVec {
    let terms = rng.gen_range(1..=3);
    let mut v = ModVec::zero();
    while v.is_zero() {
        for _ in 0..terms {
            let sym = basis[rng.gen_range(0..basis.len())];
            v.add_term(sym, &Scalar::from_int(rng.gen_range(-3..=3)));
        }
    }
    v
}

/// `w_k v / b(b-1) = t^k v` and `w_0 = b(b-1)` on random `(b, k, v)` with
/// `b` outside `{0, 1}`, cycling through [`RECOVERY_FAMILIES`].
pub fn recovery(seed: u64, samples: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(samples);
    for i in 0..samples {
        let template = RECOVERY_FAMILIES[i % RECOVERY_FAMILIES.len()];
        let b = loop {
            let b = random_rational(&mut rng);
            if !b.is_zero() && !b.is_one() {
                break b;
            }
        };
        let m = parse_module(&template.replace("{b}", &b.to_string()))?;
        let k = rng.gen_range(-5..=5);
        let v = random_vector(&mut rng, &m.basis(8));
        cases.push((m, b, k, v));
    }
    let outcomes = cases
        .par_iter()
        .map(|(m, b, k, v)| -> Result<Outcome> {
            let c = b * &(b - &Scalar::one());
            let mut checked = 0;
            for sym in v.support() {
                checked += 1;
                let got = recover_c(m, &ModVec::basis(*sym))?;
                if got != c {
                    return Ok((checked, Some(format!("{m}: w_0 {sym} = {got}*{sym}, expected {c}"))));
                }
            }
            checked += 1;
            let got = recover_t_action(m, *k, v)?;
            let want = m.t_act(*k, v)?;
            if got != want {
                return Ok((checked, Some(format!("{m}: t^{k} ({v}) recovered as {got}, expected {want}"))));
            }
            Ok((checked, None))
        })
        .collect::<Result<Vec<_>>>()?;
    let samples = cases.iter().map(|(m, _, k, v)| format!("{m}; k={k}; v={v}")).collect();
    Ok(assemble("recovery", seed, samples, outcomes))
}

/// `theta A_1 -> C[t,t^-1]/C` commutes with every `d_n`, on random
/// `theta u` and `|n| <= 5`.
pub fn theta_to_vprime_suite(seed: u64, samples: usize) -> Result<SuiteReport> {
    let natural = Module::natural(Scalar::one());
    let vprime = Module::vprime00();
    let theta = Ore::var(Generator::Theta);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(samples);
    for _ in 0..samples {
        let basis: Vec<Sym> = (-5..=5).map(Sym::T).collect();
        let raw = random_vector(&mut rng, &basis);
        let u = natural.k_act(&theta, &raw)?;
        cases.push((rng.gen_range(-5..=5), u));
    }
    let outcomes = cases
        .par_iter()
        .map(|(n, u)| -> Result<Outcome> {
            let lhs = theta_to_vprime(&natural.vir_act(*n, u)?)?;
            let rhs = vprime.vir_act(*n, &theta_to_vprime(u)?)?;
            let cx = (lhs != rhs).then(|| format!("n={n} u={u}: {lhs} != {rhs}"));
            Ok((1, cx))
        })
        .collect::<Result<Vec<_>>>()?;
    let samples = cases.iter().map(|(n, u)| format!("n={n}; u={u}")).collect();
    Ok(assemble("theta-to-vprime", seed, samples, outcomes))
}
