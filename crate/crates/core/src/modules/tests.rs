use super::*;
use crate::laurent::tests::arb_laurent;
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Scalar {
    Scalar::ratio(p, d)
}

fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|(k, c)| (*k, q(*c, 1))))
}

fn th() -> OreElem {
    Ore::var(Generator::Theta)
}

fn dt() -> OreElem {
    Ore::var(Generator::Ddt)
}

fn coeff(gen: Generator, f: LaurentPoly) -> OreElem {
    Ore::from_coeff(gen, f)
}

fn e(k: u32) -> ModVec {
    ModVec::basis(Sym::E(k))
}

fn quadratic_module(f: &LaurentPoly, b: Scalar) -> Module {
    let beta = &th().pow(2) - &coeff(Generator::Theta, f.clone());
    Module::kquotient(beta, b).unwrap()
}

fn power_module(order: u32, b: Scalar) -> Module {
    let beta = &dt().pow(order) - &coeff(Generator::Ddt, LaurentPoly::t());
    Module::kquotient(beta, b).unwrap()
}

#[test]
fn omega_t_acts_by_shift() {
    let m = Module::omega(q(2, 1), q(0, 1)).unwrap();
    let v = m.t_act(1, &e(1)).unwrap();
    assert_eq!(v, ModVec::from_terms([(Sym::E(1), q(2, 1)), (Sym::E(0), q(-2, 1))]));
    let m3 = Module::omega(q(3, 1), q(0, 1)).unwrap();
    assert_eq!(m3.t_act(1, &e(0)).unwrap(), ModVec::term(Sym::E(0), q(3, 1)));
}

#[test]
fn quadratic_theta_on_top_vector() {
    let f = lp(&[(1, 1), (-1, 3)]);
    let m = quadratic_module(&f, q(0, 1));
    let n = 4;
    let got = m.k_act(&th(), &ModVec::basis(Sym::B(n, 1))).unwrap();
    let mut want = ModVec::term(Sym::B(n, 1), q(n, 1));
    for (j, c) in f.terms() {
        want.add_term(Sym::B(j + n, 0), c);
    }
    assert_eq!(got, want);
}

#[test]
fn natural_theta_is_eigen() {
    let m = Module::natural(q(0, 1));
    for k in -3..4 {
        let v = m.k_act(&th(), &ModVec::basis(Sym::T(k))).unwrap();
        assert_eq!(v, ModVec::term(Sym::T(k), q(k, 1)));
        assert_eq!(m.t_act(2, &ModVec::basis(Sym::T(k))).unwrap(), ModVec::basis(Sym::T(k + 2)));
    }
}

#[test]
fn kquotient_t_shifts() {
    let m = quadratic_module(&lp(&[(2, 1)]), q(1, 2));
    let v = m.t_act(-3, &ModVec::basis(Sym::B(1, 1))).unwrap();
    assert_eq!(v, ModVec::basis(Sym::B(-2, 1)));
}

#[test]
fn natural_b0_action() {
    let m = Module::natural(q(0, 1));
    for k in -3..4 {
        for n in -3..4 {
            let v = m.vir_act(k, &ModVec::basis(Sym::T(n))).unwrap();
            assert_eq!(v, ModVec::term(Sym::T(k + n), q(n, 1)));
        }
    }
}

#[test]
fn intermediate_series_constant_alpha() {
    let alpha = q(1, 3);
    let b = q(5, 2);
    let m = Module::intermediate_series(LaurentPoly::constant(alpha.clone()), b.clone()).unwrap();
    for k in -3..4 {
        for n in -3..4 {
            let got = m.vir_act(k, &ModVec::basis(Sym::B(n, 0))).unwrap();
            let c = &(&alpha + &q(n, 1)) + &(&q(k, 1) * &b);
            assert_eq!(got, ModVec::term(Sym::B(k + n, 0), c));
        }
    }
}

#[test]
fn omega_closed_form_examples() {
    assert_eq!(
        omega_closed_form(1, 0, &q(2, 1), &q(3, 1)).unwrap(),
        ModVec::from_terms([(Sym::E(1), q(2, 1)), (Sym::E(0), q(4, 1))])
    );
    for k in 0..4 {
        assert_eq!(omega_closed_form(0, k, &q(7, 3), &q(-1, 2)).unwrap(), e(k + 1));
    }
    assert_eq!(
        omega_closed_form(1, 1, &q(1, 1), &q(0, 1)).unwrap(),
        ModVec::from_terms([(Sym::E(2), q(1, 1)), (Sym::E(1), q(-2, 1)), (Sym::E(0), q(1, 1))])
    );
    assert_eq!(
        omega_closed_form(1, 0, &q(0, 1), &q(1, 1)),
        Err(Error::InvalidModule("lambda must be nonzero".into()))
    );
}

// Expands lambda^n (theta + n(b-1)) (theta - n)^k without the module code.
fn omega_oracle(n: i64, k: u32, lambda: &Scalar, b: &Scalar) -> ModVec {
    // coefficient vectors of polynomials in theta, low first
    let mul = |p: &[Scalar], r: &[Scalar]| {
        let mut out = vec![Scalar::zero(); p.len() + r.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * c);
            }
        }
        out
    };
    let mut acc = vec![&q(n, 1) * &(b - &Scalar::one()), Scalar::one()];
    for _ in 0..k {
        acc = mul(&acc, &[q(-n, 1), Scalar::one()]);
    }
    let ln = lambda.pow(n).unwrap();
    ModVec::from_terms(acc.into_iter().enumerate().map(|(i, c)| (Sym::E(i as u32), &c * &ln)))
}

#[test]
fn omega_vir_matches_closed_form() {
    for (lambda, b) in [(q(2, 1), q(3, 1)), (Scalar::complex(q(1, 1), q(1, 1)), q(1, 2)), (q(-1, 3), q(0, 1))] {
        let m = Module::omega(lambda.clone(), b.clone()).unwrap();
        for n in -5..=5 {
            for k in 0..=5 {
                let got = m.vir_act(n, &e(k)).unwrap();
                assert_eq!(got, omega_closed_form(n, k, &lambda, &b).unwrap());
                assert_eq!(got, omega_oracle(n, k, &lambda, &b));
            }
        }
    }
}

#[test]
fn fraction_examples() {
    let inert = Module::fraction(vec![q(1, 1)], vec![q(0, 1)], q(0, 1)).unwrap();
    let one = ModVec::basis(Sym::T(0));
    for k in -3..4 {
        assert!(inert.fraction_act(k, &one).unwrap().is_zero());
    }
    let m = Module::fraction(vec![q(1, 1)], vec![q(1, 1)], q(0, 1)).unwrap();
    let got = m.fraction_act(0, &one).unwrap();
    // t/(t-1) = 1 + 1/(t-1)
    assert_eq!(got, ModVec::from_terms([(Sym::T(0), q(1, 1)), (Sym::P(0, 1), q(1, 1))]));
    let value = m.fraction_value(&got).unwrap();
    let expect = RatFunc::new(Poly::x(), Poly::linear(&q(1, 1))).unwrap();
    assert_eq!(value, expect);
}

#[test]
fn fraction_closed_form_matches_k_action() {
    let m = Module::fraction(vec![q(0, 1), q(1, 1), q(-2, 1)], vec![q(1, 2), q(1, 1), q(2, 3)], q(1, 2))
        .unwrap();
    for sym in m.basis(12) {
        let v = ModVec::basis(sym);
        for n in -3..=3 {
            assert_eq!(m.fraction_act(n, &v).unwrap(), m.vir_act(n, &v).unwrap());
        }
    }
}

#[test]
fn fraction_rejects_foreign_poles() {
    let m = Module::fraction(vec![q(1, 1)], vec![q(1, 1)], q(0, 1)).unwrap();
    let r = RatFunc::pole_power(&q(1, 1), &q(2, 1), 1);
    assert!(matches!(m.fraction_vector(&r), Err(Error::LeftLocalizedRing(_))));
}

#[test]
fn partial_fractions_of_double_pole() {
    let m = Module::fraction(vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)], q(0, 1)).unwrap();
    // 1/(t^2 (t-1)^2) = 1/t^2 + 2/t - 2/(t-1) + 1/(t-1)^2
    let den = &Poly::x().pow(2) * &Poly::linear(&q(1, 1)).pow(2);
    let r = RatFunc::new(Poly::one(), den).unwrap();
    let v = m.fraction_vector(&r).unwrap();
    assert_eq!(
        v,
        ModVec::from_terms([
            (Sym::T(-2), q(1, 1)),
            (Sym::T(-1), q(2, 1)),
            (Sym::P(0, 1), q(-2, 1)),
            (Sym::P(0, 2), q(1, 1)),
        ])
    );
    assert_eq!(m.fraction_value(&v).unwrap(), r);
}

#[test]
fn vprime_examples() {
    let m = Module::vprime00();
    let t = |k| ModVec::basis(Sym::T(k));
    assert!(m.vir_act(1, &t(-1)).unwrap().is_zero());
    assert_eq!(m.vir_act(2, &t(1)).unwrap(), t(3));
    for n in [-3, -1, 2, 5] {
        assert_eq!(m.vir_act(0, &t(n)).unwrap(), ModVec::term(Sym::T(n), q(n, 1)));
    }
    assert_eq!(m.k_act(&th(), &t(1)), Err(Error::NoKAction));
    assert_eq!(m.b().unwrap_err(), Error::NoTwist);
    assert_eq!(m.vir_act(1, &t(0)), Err(Error::IllegalSymbol("T(0)".into())));
}

#[test]
fn theta_to_vprime_examples() {
    let natural = Module::natural(q(1, 1));
    let vprime = Module::vprime00();
    for n in [-4, -1, 1, 3] {
        let u = natural.k_act(&th(), &ModVec::basis(Sym::T(n))).unwrap();
        assert_eq!(theta_to_vprime(&u).unwrap(), ModVec::basis(Sym::T(n)));
    }
    let zero = natural.k_act(&th(), &ModVec::basis(Sym::T(0))).unwrap();
    assert!(theta_to_vprime(&zero).unwrap().is_zero());
    let u = natural.k_act(&th(), &ModVec::basis(Sym::T(1))).unwrap();
    let lhs = theta_to_vprime(&natural.vir_act(1, &u).unwrap()).unwrap();
    let rhs = vprime.vir_act(1, &theta_to_vprime(&u).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert!(matches!(theta_to_vprime(&ModVec::basis(Sym::T(0))), Err(Error::NotInSubmodule(_))));
}

#[test]
fn omega_submodule_map_intertwines() {
    let lambda = q(3, 2);
    let one = Module::omega(lambda.clone(), q(1, 1)).unwrap();
    let zero = Module::omega(lambda, q(0, 1)).unwrap();
    for k in 1..5 {
        for n in -3..=3 {
            let lhs = omega_submodule_map(&one.vir_act(n, &e(k)).unwrap()).unwrap();
            let rhs = zero.vir_act(n, &omega_submodule_map(&e(k)).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn division_matches_tables() {
    let b = q(2, 3);
    let alpha = lp(&[(0, 2), (1, 1)]);
    let lin = Module::intermediate_series(alpha.clone(), b.clone()).unwrap();
    let f = lp(&[(2, 1), (1, -1)]);
    let quad = quadratic_module(&f, b.clone());
    let pow = power_module(3, b.clone());
    for k in -4..=4 {
        for n in -4..=4 {
            let v = ModVec::basis(Sym::B(n, 0));
            assert_eq!(lin.vir_act(k, &v).unwrap(), tables::intermediate_series(&alpha, &b, k, n));
            for s in 0..2 {
                let v = ModVec::basis(Sym::B(n, s));
                assert_eq!(quad.vir_act(k, &v).unwrap(), tables::quadratic(&f, &b, k, n, s));
            }
            for s in 0..3 {
                let v = ModVec::basis(Sym::B(n, s));
                assert_eq!(pow.vir_act(k, &v).unwrap(), tables::power_minus_t(3, &b, k, n, s));
            }
        }
    }
}

// The printed forms with kb in place of (n+kb) on the theta coefficient, and
// with the bk term one power of t too high, do not satisfy the Virasoro
// relation, so they cannot be a module action.
#[test]
fn misprinted_tables_break_the_bracket() {
    let b = q(2, 1);
    let f = lp(&[(2, 1)]);
    let printed_quadratic = |k: i64, v: &ModVec| {
        let mut out = ModVec::zero();
        for (sym, c) in v.terms() {
            let Sym::B(n, s) = *sym else { unreachable!() };
            let img = if s == 0 {
                tables::quadratic(&f, &b, k, n, 0)
            } else {
                let mut w = ModVec::term(Sym::B(k + n, 1), q(n, 1));
                w.add_term(Sym::B(k + n, 0), &(&q(k, 1) * &b));
                for (j, a) in f.terms() {
                    w.add_term(Sym::B(j + k + n, 0), a);
                }
                w
            };
            out.add_scaled(&img, c);
        }
        out
    };
    let printed_power = |k: i64, v: &ModVec| {
        let mut out = ModVec::zero();
        for (sym, c) in v.terms() {
            let Sym::B(r, s) = *sym else { unreachable!() };
            let mut w = ModVec::term(Sym::B(k + r, s), q(r, 1));
            w.add_term(Sym::B(k + r + 1, s), &(&b * &q(k, 1)));
            if s + 1 < 2 {
                w.add_term(Sym::B(k + r + 1, s + 1), &Scalar::one());
            } else {
                w.add_term(Sym::B(k + r + 2, 0), &Scalar::one());
            }
            out.add_scaled(&w, c);
        }
        out
    };
    let breaks = |act: &dyn Fn(i64, &ModVec) -> ModVec| {
        let v = ModVec::basis(Sym::B(0, 1));
        let lhs = &act(1, &act(-1, &v)) - &act(-1, &act(1, &v));
        let rhs = act(0, &v).scale(&q(-2, 1));
        lhs != rhs
    };
    assert!(breaks(&printed_quadratic));
    assert!(breaks(&printed_power));
}

#[test]
fn omega_invariant_line_at_b1() {
    let m = Module::omega(Scalar::complex(q(1, 1), q(1, 1)), q(1, 1)).unwrap();
    for k in 1..6 {
        for n in -5..=5 {
            assert!(m.vir_act(n, &e(k)).unwrap().coeff(&Sym::E(0)).is_zero());
        }
    }
}

#[test]
fn natural_b0_kills_constants() {
    let m = Module::natural(q(0, 1));
    for k in -8..=8 {
        assert!(m.vir_act(k, &ModVec::basis(Sym::T(0))).unwrap().is_zero());
    }
}

#[test]
fn validation() {
    assert!(Module::omega(q(0, 1), q(1, 1)).is_err());
    assert!(Module::kquotient(coeff(Generator::Theta, lp(&[(0, 1)])), q(1, 1)).is_err());
    let nonunit = &coeff(Generator::Theta, lp(&[(0, 1), (1, 1)])) * &th();
    assert_eq!(Module::kquotient(nonunit, q(1, 1)), Err(Error::NonUnitLeadingCoeff));
    assert!(Module::fraction(vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(0, 1)], q(0, 1)).is_err());
    assert!(Module::fraction(vec![q(1, 1)], vec![], q(0, 1)).is_err());
    let m = quadratic_module(&lp(&[(1, 1)]), q(0, 1));
    assert!(m.check_vec(&ModVec::basis(Sym::B(0, 2))).is_err());
    assert!(m.check_vec(&e(0)).is_err());
    let fr = Module::fraction(vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(1, 1)], q(0, 1)).unwrap();
    assert!(!fr.is_legal(&Sym::P(0, 1)));
    assert!(fr.is_legal(&Sym::P(1, 1)));
    assert!(!fr.is_legal(&Sym::P(1, 0)));
}

#[test]
fn basis_orders() {
    let m = Module::natural(q(0, 1));
    assert_eq!(m.basis(5), vec![Sym::T(0), Sym::T(1), Sym::T(-1), Sym::T(2), Sym::T(-2)]);
    assert_eq!(Module::vprime00().basis(3), vec![Sym::T(1), Sym::T(-1), Sym::T(2)]);
    let quad = quadratic_module(&lp(&[(1, 1)]), q(0, 1));
    assert_eq!(quad.basis(5), vec![Sym::B(0, 0), Sym::B(0, 1), Sym::B(1, 0), Sym::B(1, 1), Sym::B(-1, 0)]);
    let fr = Module::fraction(vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(1, 1)], q(0, 1)).unwrap();
    assert_eq!(fr.basis(5), vec![Sym::T(0), Sym::T(1), Sym::T(-1), Sym::P(1, 1), Sym::T(2)]);
    assert_eq!(Module::omega(q(1, 1), q(0, 1)).unwrap().basis(2), vec![Sym::E(0), Sym::E(1)]);
}

#[test]
fn theta_surjectivity() {
    assert_eq!(Module::omega(q(2, 1), q(0, 1)).unwrap().theta_surjective(), Some(false));
    assert_eq!(Module::natural(q(0, 1)).theta_surjective(), Some(false));
    let m = Module::intermediate_series(LaurentPoly::constant(q(1, 2)), q(0, 1)).unwrap();
    assert_eq!(m.theta_surjective(), Some(true));
    let m = Module::intermediate_series(LaurentPoly::constant(q(-3, 1)), q(0, 1)).unwrap();
    assert_eq!(m.theta_surjective(), Some(false));
    let m = Module::intermediate_series(lp(&[(1, 1)]), q(0, 1)).unwrap();
    assert_eq!(m.theta_surjective(), None);
    // d/dt - 1/t is theta - 1 after normalizing
    let ddt = &dt() - &coeff(Generator::Ddt, lp(&[(-1, 1)]));
    let m = Module::kquotient(ddt, q(0, 1)).unwrap();
    assert_eq!(m.intermediate_alpha(), Some(lp(&[(0, 1)])));
}

#[test]
fn display_forms() {
    let v = ModVec::from_terms([(Sym::E(1), q(2, 1)), (Sym::E(0), q(-2, 1))]);
    assert_eq!(v.to_string(), "-2*E(0) + 2*E(1)");
    let w = ModVec::from_terms([(Sym::B(-1, 1), Scalar::complex(q(1, 1), q(1, 1))), (Sym::P(0, 2), q(-1, 1))]);
    assert_eq!(w.to_string(), "(1+i)*B(-1,1) - P(0,2)");
    assert_eq!(ModVec::zero().to_string(), "0");
    assert_eq!(Module::omega(q(2, 1), q(3, 1)).unwrap().to_string(), "omega(lambda=2, b=3)");
    assert_eq!(Module::vprime00().to_string(), "vprime00");
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..7, 1i64..4, -2i64..3).prop_map(|(p, d, im)| Scalar::complex(q(p, d), q(im, 2)))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    small_scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn unit_monic(gen: Generator, deg: u32, lower: Vec<(u32, LaurentPoly)>) -> OreElem {
    let lead = Ore::monomial(gen, LaurentPoly::one(), deg);
    let rest = Ore::from_coeffs(gen, lower.into_iter().filter(|(m, _)| *m < deg));
    &lead + &rest
}

pub(crate) fn arb_module() -> impl Strategy<Value = Module> {
    let gen = prop_oneof![Just(Generator::Theta), Just(Generator::Ddt)];
    prop_oneof![
        (nonzero_scalar(), small_scalar()).prop_map(|(l, b)| Module::omega(l, b).unwrap()),
        (gen, 1u32..3, proptest::collection::vec((0u32..2, arb_laurent()), 0..3), small_scalar())
            .prop_map(|(g, d, lower, b)| Module::kquotient(unit_monic(g, d, lower), b).unwrap()),
        (proptest::sample::subsequence(vec![0i64, 1, -1, 2], 1..3), small_scalar(), small_scalar())
            .prop_map(|(poles, a, b)| {
                let alphas = (0..poles.len()).map(|i| &a + &q(i as i64, 1)).collect();
                Module::fraction(poles.into_iter().map(|p| q(p, 1)).collect(), alphas, b).unwrap()
            }),
        small_scalar().prop_map(Module::natural),
    ]
}

fn arb_module_with_vprime() -> impl Strategy<Value = Module> {
    prop_oneof![4 => arb_module(), 1 => Just(Module::vprime00())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn module_axiom(m in arb_module(), x in crate::ore::tests::arb_ore(Generator::Theta, 2),
                    y in crate::ore::tests::arb_ore(Generator::Ddt, 2), idx in 0usize..8) {
        let v = ModVec::basis(m.basis(8)[idx]);
        let xy = x.checked_mul(&y.to_generator(Generator::Theta)).unwrap();
        let lhs = m.k_act(&xy, &v).unwrap();
        let rhs = m.k_act(&x, &m.k_act(&y, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn virasoro_bracket(m in arb_module_with_vprime(), idx in 0usize..8, mm in -3i64..=3, n in -3i64..=3) {
        let v = ModVec::basis(m.basis(8)[idx]);
        let lhs = &m.vir_act(mm, &m.vir_act(n, &v).unwrap()).unwrap()
            - &m.vir_act(n, &m.vir_act(mm, &v).unwrap()).unwrap();
        let rhs = m.vir_act(mm + n, &v).unwrap().scale(&q(n - mm, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn heisenberg_virasoro(m in arb_module(), idx in 0usize..8, mm in -3i64..=3, n in -3i64..=3) {
        let v = ModVec::basis(m.basis(8)[idx]);
        let lhs = &m.vir_act(n, &m.t_act(mm, &v).unwrap()).unwrap()
            - &m.t_act(mm, &m.vir_act(n, &v).unwrap()).unwrap();
        let rhs = m.t_act(mm + n, &v).unwrap().scale(&q(mm, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vir_is_linear(m in arb_module_with_vprime(), a in small_scalar(), i in 0usize..6, j in 0usize..6, n in -3i64..=3) {
        let basis = m.basis(6);
        let u = ModVec::basis(basis[i]);
        let w = ModVec::term(basis[j], a);
        let lhs = m.vir_act(n, &(&u + &w)).unwrap();
        let rhs = &m.vir_act(n, &u).unwrap() + &m.vir_act(n, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn omega_closed_form_agrees(l in nonzero_scalar(), b in small_scalar(), n in -5i64..=5, k in 0u32..=5) {
        let m = Module::omega(l.clone(), b.clone()).unwrap();
        prop_assert_eq!(m.vir_act(n, &e(k)).unwrap(), omega_closed_form(n, k, &l, &b).unwrap());
    }

    #[test]
    fn theta_to_vprime_intertwines(coeffs in proptest::collection::vec((-4i64..=4, small_scalar()), 1..4), n in -4i64..=4) {
        let natural = Module::natural(q(1, 1));
        let vprime = Module::vprime00();
        let raw = ModVec::from_terms(coeffs.into_iter().map(|(k, c)| (Sym::T(k), c)));
        let u = natural.k_act(&th(), &raw).unwrap();
        let lhs = theta_to_vprime(&natural.vir_act(n, &u).unwrap()).unwrap();
        let rhs = vprime.vir_act(n, &theta_to_vprime(&u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_fractions_round_trip(m in arb_module(), idxs in proptest::collection::vec((0usize..10, small_scalar()), 1..4)) {
        if let Family::Fraction { .. } = m.family() {
            let basis = m.basis(10);
            let v = ModVec::from_terms(idxs.into_iter().map(|(i, c)| (basis[i], c)));
            let r = m.fraction_value(&v).unwrap();
            prop_assert_eq!(m.fraction_vector(&r).unwrap(), v);
        }
    }
}
