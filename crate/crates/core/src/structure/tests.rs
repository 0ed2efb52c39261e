use super::*;
use crate::modules::tests::arb_module;
use crate::ore::{Ore, OreElem};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Scalar {
    Scalar::ratio(p, d)
}

fn omega(l: i64, b: Scalar) -> Module {
    Module::omega(q(l, 1), b).unwrap()
}

fn e(k: u32) -> ModVec {
    ModVec::basis(Sym::E(k))
}

fn kquot_theta(lower: &[(u32, LaurentPoly)], deg: u32) -> Module {
    let lead: OreElem = Ore::monomial(Generator::Theta, LaurentPoly::one(), deg);
    let rest = Ore::from_coeffs(Generator::Theta, lower.iter().cloned());
    Module::kquotient(&lead + &rest, q(1, 2)).unwrap()
}

/// Adds a stray `E(0)` to every `d_2` image.
struct Corrupted(Module);

impl VirRep for Corrupted {
    fn vir(&self, n: i64, v: &ModVec) -> Result<ModVec> {
        let mut out = self.0.vir_act(n, v)?;
        if n == 2 && !v.is_zero() {
            out.add_term(Sym::E(0), &Scalar::one());
        }
        Ok(out)
    }
    fn t_act(&self, m: i64, v: &ModVec) -> Result<ModVec> {
        self.0.t_act(m, v)
    }
    fn basis(&self, count: usize) -> Vec<Sym> {
        self.0.basis(count)
    }
    fn twist(&self) -> Option<Scalar> {
        self.0.twist().cloned()
    }
}

/// `d_0` doubled, so `w_0` is no longer a scalar on `Omega`.
struct SkewedZero(Module);

impl VirRep for SkewedZero {
    fn vir(&self, n: i64, v: &ModVec) -> Result<ModVec> {
        let out = self.0.vir_act(n, v)?;
        Ok(if n == 0 { out.scale(&q(2, 1)) } else { out })
    }
    fn t_act(&self, m: i64, v: &ModVec) -> Result<ModVec> {
        self.0.t_act(m, v)
    }
    fn basis(&self, count: usize) -> Vec<Sym> {
        self.0.basis(count)
    }
    fn twist(&self) -> Option<Scalar> {
        self.0.twist().cloned()
    }
}

#[test]
fn bracket_passes_on_examples() {
    assert!(bracket_check(&omega(2, q(1, 2)), 3, 6).unwrap().passed);
    let r = bracket_check(&Module::natural(q(0, 1)), 3, 6).unwrap();
    assert!(r.passed);
    assert_eq!(r.cases, 6 * 49);
}

#[test]
fn bracket_reports_counterexample() {
    let r = bracket_check(&Corrupted(omega(2, q(1, 2))), 3, 4).unwrap();
    assert!(!r.passed);
    let cx = r.counterexample.unwrap();
    assert!(cx.m == Some(2) || cx.n == Some(2) || cx.m.unwrap() + cx.n.unwrap() == 2);
    assert_ne!(cx.lhs, cx.rhs);
}

#[test]
fn wk_examples() {
    let m = omega(3, q(2, 1));
    assert_eq!(wk_apply(&m, 1, &e(0)).unwrap(), ModVec::term(Sym::E(0), q(6, 1)));
    assert!(wk_check(&m, 4, 5).unwrap().passed);
    for b in [q(0, 1), q(1, 1)] {
        let m = Module::natural(b);
        for k in -3..=3 {
            for sym in m.basis(5) {
                assert!(wk_apply(&m, k, &ModVec::basis(sym)).unwrap().is_zero());
            }
        }
    }
    assert_eq!(wk_check(&Module::vprime00(), 2, 3).unwrap_err(), Error::NoTwist);
    assert!(!wk_check(&Corrupted(omega(3, q(2, 1))), 3, 3).unwrap().passed);
}

#[test]
fn recover_c_examples() {
    assert_eq!(recover_c(&omega(2, q(1, 2)), &e(3)).unwrap(), q(-1, 4));
    assert_eq!(recover_c(&Module::natural(q(0, 1)), &ModVec::basis(Sym::T(2))).unwrap(), q(0, 1));
    assert_eq!(recover_c(&omega(5, q(1, 1)), &e(0)).unwrap(), q(0, 1));
    assert_eq!(recover_c(&Module::natural(q(2, 1)), &ModVec::basis(Sym::T(-1))).unwrap(), q(2, 1));
    assert_eq!(recover_c(&omega(2, q(2, 1)), &ModVec::zero()), Err(Error::ZeroVector));
    assert_eq!(recover_c(&SkewedZero(omega(2, q(3, 1))), &e(1)), Err(Error::NotEigenvector));
}

#[test]
fn recover_t_examples() {
    let m = omega(3, q(2, 1));
    assert_eq!(recover_t_action(&m, 1, &e(0)).unwrap(), ModVec::term(Sym::E(0), q(3, 1)));
    let v = ModVec::from_terms([(Sym::E(2), q(1, 1)), (Sym::E(0), q(-3, 1))]);
    assert_eq!(recover_t_action(&m, 0, &v).unwrap(), v);
    assert_eq!(recover_t_action(&omega(3, q(1, 1)), 1, &e(0)), Err(Error::TwistDegenerate));
}

#[test]
fn probe_finds_omega_submodule() {
    let m = omega(2, q(1, 1));
    let window: Vec<Sym> = (0..7).map(Sym::E).collect();
    let (report, cert) = submodule_probe(&m, Some(m.family()), &e(1), 3, 4, &window).unwrap();
    assert_eq!(report.verdict, ProbeVerdict::ProperSubspaceWitness);
    assert_eq!(report.spanned_dim, 6);
    assert_eq!(report.window_dim, 7);
    let cert = cert.unwrap();
    assert!(verify_certificate(&m, &cert).unwrap());
    assert!(cert.basis.iter().all(|v| v.coeff(&Sym::E(0)).is_zero()));
}

#[test]
fn probe_finds_constants_line() {
    let m = Module::natural(q(0, 1));
    let window = m.basis(9);
    let seed = ModVec::basis(Sym::T(0));
    let (report, cert) = submodule_probe(&m, Some(m.family()), &seed, 3, 4, &window).unwrap();
    assert_eq!(report.verdict, ProbeVerdict::ProperSubspaceWitness);
    assert_eq!(report.spanned_dim, 1);
    assert_eq!(report.escapes, 0);
    assert!(verify_certificate(&m, &cert.unwrap()).unwrap());
}

#[test]
fn probe_fills_generic_window() {
    let m = omega(2, q(1, 2));
    let window: Vec<Sym> = (0..7).map(Sym::E).collect();
    let (report, cert) = submodule_probe(&m, Some(m.family()), &e(0), 3, 4, &window).unwrap();
    assert_eq!(report.verdict, ProbeVerdict::WindowFilled);
    assert_eq!(report.spanned_dim, 7);
    assert!(cert.is_none());
}

#[test]
fn probe_inconclusive_without_escape_rule() {
    // same data as the Omega witness, but with no family information
    let m = omega(2, q(1, 1));
    let window: Vec<Sym> = (0..7).map(Sym::E).collect();
    let (report, _) = submodule_probe(&m, None, &e(1), 3, 4, &window).unwrap();
    assert_eq!(report.verdict, ProbeVerdict::Inconclusive);
    assert_eq!(report.spanned_dim, 6);
}

#[test]
fn probe_rejects_bad_seed() {
    let m = omega(2, q(1, 1));
    let window: Vec<Sym> = (0..3).map(Sym::E).collect();
    assert!(submodule_probe(&m, None, &e(5), 3, 4, &window).is_err());
    assert_eq!(submodule_probe(&m, None, &ModVec::zero(), 3, 4, &window).unwrap_err(), Error::ZeroVector);
}

#[test]
fn tampered_certificate_fails() {
    let m = omega(2, q(1, 1));
    let window: Vec<Sym> = (0..7).map(Sym::E).collect();
    let (_, cert) = submodule_probe(&m, Some(m.family()), &e(1), 3, 4, &window).unwrap();
    let mut cert = cert.unwrap();
    cert.basis.pop();
    assert!(!verify_certificate(&m, &cert).unwrap());
    let other = omega(2, q(1, 2));
    let (_, cert) = submodule_probe(&m, Some(m.family()), &e(1), 3, 4, &window).unwrap();
    assert!(!verify_certificate(&other, &cert.unwrap()).unwrap());
}

#[test]
fn fingerprints() {
    let f = fingerprint(&omega(2, q(3, 1))).unwrap();
    assert_eq!(f.c, "6");
    assert_eq!(f.family, "OMEGA");
    assert_eq!(f.params["lambda"], "2");
    assert_eq!(f.b.as_deref(), Some("3"));
    assert_eq!(f.lambda_recovered.as_deref(), Some("2"));
    let g = fingerprint(&omega(2, q(-2, 1))).unwrap();
    assert_eq!(g.c, f.c);
    assert_ne!(g.b, f.b);
    let n = fingerprint(&Module::natural(q(0, 1))).unwrap();
    assert_eq!((n.c.as_str(), n.family.as_str(), n.b.as_deref()), ("0", "NATURAL", Some("0")));
    assert_eq!(fingerprint(&Module::vprime00()).unwrap().c, "0");
}

#[test]
fn decide_isomorphism_examples() {
    let iso = |a: &Module, b: &Module| decide_isomorphism(a, b).verdict;
    let o23 = omega(2, q(3, 1));
    assert_eq!(iso(&o23, &o23.clone()), IsoVerdict::Isomorphic);
    assert_eq!(iso(&o23, &omega(5, q(3, 1))), IsoVerdict::NotIsomorphic);
    assert_eq!(iso(&o23, &omega(2, q(-2, 1))), IsoVerdict::NotIsomorphic);
    let a = kquot_theta(&[(0, -LaurentPoly::t())], 2);
    let b = kquot_theta(&[(0, -LaurentPoly::t().pow(3))], 2);
    assert_eq!(iso(&a, &b), IsoVerdict::Unknown);
    assert_eq!(iso(&a, &kquot_theta(&[(0, -LaurentPoly::t())], 3)), IsoVerdict::NotIsomorphic);
    assert_eq!(iso(&a, &omega(2, q(1, 2))), IsoVerdict::NotIsomorphic);
}

#[test]
fn decide_isomorphism_rank_one() {
    let iso = |a: &Module, b: &Module| decide_isomorphism(a, b).verdict;
    let series = |alpha: Scalar, b: Scalar| Module::intermediate_series(LaurentPoly::constant(alpha), b).unwrap();
    assert_eq!(iso(&series(q(3, 1), q(0, 1)), &Module::natural(q(0, 1))), IsoVerdict::Isomorphic);
    assert_eq!(iso(&series(q(1, 2), q(0, 1)), &Module::natural(q(0, 1))), IsoVerdict::NotIsomorphic);
    assert_eq!(iso(&series(q(1, 2), q(1, 1)), &series(q(1, 2), q(0, 1))), IsoVerdict::Isomorphic);
    assert_eq!(iso(&series(q(1, 2), q(1, 1)), &series(q(-1, 2), q(0, 1))), IsoVerdict::Isomorphic);
    assert_eq!(iso(&Module::natural(q(1, 1)), &Module::natural(q(0, 1))), IsoVerdict::NotIsomorphic);
    assert_eq!(iso(&omega(2, q(1, 1)), &omega(2, q(0, 1))), IsoVerdict::NotIsomorphic);
    let frac0 = Module::fraction(vec![q(0, 1)], vec![q(2, 1)], q(1, 3)).unwrap();
    assert_eq!(iso(&frac0, &Module::natural(q(1, 3))), IsoVerdict::Isomorphic);
    let frac1 = Module::fraction(vec![q(1, 1)], vec![q(2, 1)], q(1, 3)).unwrap();
    assert_eq!(iso(&frac1, &Module::natural(q(1, 3))), IsoVerdict::NotIsomorphic);
    assert_eq!(iso(&Module::vprime00(), &Module::vprime00()), IsoVerdict::Isomorphic);
    assert_eq!(iso(&Module::vprime00(), &Module::natural(q(1, 1))), IsoVerdict::Unknown);
}

fn twisted(m: &Module, b: Scalar) -> Module {
    m.with_twist(b).unwrap()
}

fn arb_twist() -> impl Strategy<Value = Scalar> {
    prop_oneof![Just(q(0, 1)), Just(q(1, 1)), Just(q(1, 2)), Just(q(3, 1)), Just(q(-2, 1))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn recover_t_matches_t_act(m in arb_module(), b in arb_twist(), k in -4i64..=4, idx in 0usize..8) {
        let m = twisted(&m, b.clone());
        let v = ModVec::basis(m.basis(8)[idx]);
        let c = recover_c(&m, &v).unwrap();
        prop_assert_eq!(&c, &(&b * &(&b - &Scalar::one())));
        if c.is_zero() {
            prop_assert_eq!(recover_t_action(&m, k, &v), Err(Error::TwistDegenerate));
        } else {
            prop_assert_eq!(recover_t_action(&m, k, &v).unwrap(), m.t_act(k, &v).unwrap());
        }
    }

    #[test]
    fn decide_isomorphism_respects_clauses(a in arb_module(), b in arb_module(), x in arb_twist(), y in arb_twist(), same in any::<bool>()) {
        let m1 = twisted(&a, x.clone());
        let m2 = if same { twisted(&a, y.clone()) } else { twisted(&b, y.clone()) };
        let d = decide_isomorphism(&m1, &m2);
        prop_assert_eq!(d.verdict, decide_isomorphism(&m2, &m1).verdict);
        let zero_one = (x.is_zero() && y.is_one()) || (x.is_one() && y.is_zero());
        if x != y && !zero_one {
            prop_assert_eq!(d.verdict, IsoVerdict::NotIsomorphic);
        }
        if same && x == y {
            prop_assert_eq!(d.verdict, IsoVerdict::Isomorphic);
        }
        if d.verdict == IsoVerdict::Isomorphic {
            prop_assert!(x == y || zero_one);
            prop_assert_ne!(k_isomorphic(&m1, &m2).0, Some(false));
        }
    }
}

#[test]
fn memo_agrees_with_direct_action() {
    let m = Module::fraction(vec![q(1, 1), q(-2, 1)], vec![q(1, 2), q(3, 1)], q(2, 3)).unwrap();
    let memo = Memo::new(&m);
    let basis = m.basis(9);
    let v = ModVec::from_terms(basis.iter().enumerate().map(|(i, s)| (*s, q(i as i64 - 4, 3))));
    for n in -3..=3 {
        assert_eq!(memo.vir(n, &v).unwrap(), m.vir_act(n, &v).unwrap());
        assert_eq!(memo.t_act(n, &v).unwrap(), m.t_act(n, &v).unwrap());
        // second call is served from the table
        assert_eq!(memo.vir(n, &v).unwrap(), m.vir_act(n, &v).unwrap());
    }
}
