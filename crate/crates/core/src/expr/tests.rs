use super::*;
use crate::laurent::tests::arb_laurent;
use crate::modules::tests::arb_module;
use crate::ore::tests::arb_ore;
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Scalar {
    Scalar::ratio(p, d)
}

#[test]
fn laurent_examples() {
    let f = parse_laurent("t^2 - 4*t + 1/4").unwrap();
    assert_eq!(
        f,
        LaurentPoly::from_terms([(2, q(1, 1)), (1, q(-4, 1)), (0, q(1, 4))])
    );
    assert_eq!(f.to_string(), "t^2 - 4*t + 1/4");
    let g = parse_laurent("(1+i)*t^-1 - t^3").unwrap();
    assert_eq!(g.to_string(), "-t^3 + (1+i)*t^-1");
    assert_eq!(parse_laurent("t^(-2)*t^2").unwrap(), LaurentPoly::one());
    assert_eq!(parse_laurent("3/(2*t)").unwrap(), LaurentPoly::monomial(q(3, 2), -1));
}

#[test]
fn ore_examples() {
    assert!(parse_ore("Th*t - t*Th - t").unwrap().is_zero());
    let x = parse_ore("t^-1*Th").unwrap();
    assert_eq!(x.gen(), Generator::Theta);
    assert_eq!(x.to_generator(Generator::Ddt), Ore::var(Generator::Ddt));
    let d = parse_ore("Dt*t").unwrap();
    assert_eq!(d.gen(), Generator::Ddt);
    assert_eq!(d.to_string(), "t*Dt + 1");
    // mixed input is lowered in Th
    let m = parse_ore("Dt - t^-1*Th").unwrap();
    assert_eq!(m.gen(), Generator::Theta);
    assert!(m.is_zero());
    assert_eq!(parse_ore("Th/2").unwrap().to_string(), "1/2*Th");
}

#[test]
fn ratfunc_examples() {
    let r = parse_ratfunc("1/(t-1) + 1/(t+1)").unwrap();
    assert_eq!(r.to_string(), "(2*t)/(t^2 - 1)");
    assert_eq!(parse_ratfunc(&r.to_string()).unwrap(), r);
}

#[test]
fn syntax_errors_carry_positions() {
    let pos = |src: &str| match parse_laurent(src) {
        Err(Error::Syntax { pos, .. }) => pos,
        other => panic!("{src}: {other:?}"),
    };
    assert_eq!(pos("t + $"), 4);
    assert_eq!(pos("t^"), 2);
    assert_eq!(pos("(t + 1"), 6);
    assert_eq!(pos("t t"), 2);
    assert_eq!(pos("(t+1)^-2"), 6);
    assert_eq!(pos("Tx"), 0);
}

#[test]
fn lowering_errors() {
    assert!(matches!(parse_laurent("Th"), Err(Error::Lowering(_))));
    assert!(matches!(parse_laurent("1/(t+1)"), Err(Error::Lowering(_))));
    assert!(matches!(parse_laurent("1/0"), Err(Error::DivisionByZero)));
    assert!(matches!(parse_ore("Th/t"), Err(Error::Lowering(_))));
    assert!(matches!(parse_ratfunc("Dt"), Err(Error::Lowering(_))));
    assert!(matches!(parse_scalar("t"), Err(Error::Lowering(_))));
}

#[test]
fn modvec_examples() {
    let v = parse_modvec("2*E(1) - 2*E(0)").unwrap();
    assert_eq!(v.to_string(), "-2*E(0) + 2*E(1)");
    assert_eq!(parse_modvec("E1").unwrap(), ModVec::basis(Sym::E(1)));
    let w = parse_modvec("(1+i)*B(-1,1) - P(0,2) + 1/2*T(-3) + T4").unwrap();
    assert_eq!(w.coeff(&Sym::B(-1, 1)), Scalar::complex(q(1, 1), q(1, 1)));
    assert_eq!(w.coeff(&Sym::P(0, 2)), q(-1, 1));
    assert_eq!(w.coeff(&Sym::T(-3)), q(1, 2));
    assert_eq!(w.coeff(&Sym::T(4)), q(1, 1));
    assert!(parse_modvec("0").unwrap().is_zero());
    assert!(matches!(parse_modvec("2*X(1)"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_modvec("E(-1)"), Err(Error::Syntax { .. })));
}

#[test]
fn module_descriptors() {
    let m = parse_module("omega(lambda=2, b=3)").unwrap();
    assert_eq!(m, Module::omega(q(2, 1), q(3, 1)).unwrap());
    let s = parse_module("series(alpha=t, b=1/2)").unwrap();
    assert_eq!(s.to_string(), "kquotient(beta=Th - t, b=1/2)");
    assert_eq!(parse_module("vprime00").unwrap(), Module::vprime00());
    assert!(matches!(parse_module("omega(b=1)"), Err(Error::Usage(_))));
    assert!(matches!(parse_module("cube(b=1)"), Err(Error::Usage(_))));
}

fn arb_sym() -> impl Strategy<Value = Sym> {
    prop_oneof![
        (0u32..5).prop_map(Sym::E),
        (-4i64..5, 0u32..3).prop_map(|(k, m)| Sym::B(k, m)),
        (-4i64..5).prop_map(Sym::T),
        (0u32..3, 1u32..4).prop_map(|(i, j)| Sym::P(i, j)),
    ]
}

fn arb_modvec() -> impl Strategy<Value = ModVec> {
    let c = (-5i64..6, 1i64..4, -2i64..3).prop_map(|(p, d, im)| Scalar::complex(q(p, d), q(im, 1)));
    proptest::collection::vec((arb_sym(), c), 0..5).prop_map(ModVec::from_terms)
}

proptest! {
    #[test]
    fn laurent_round_trip(f in arb_laurent()) {
        prop_assert_eq!(parse_laurent(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn ratfunc_round_trip(f in arb_laurent(), g in arb_laurent()) {
        prop_assume!(!g.is_zero());
        let r = RatFunc::from_laurent(&f).checked_div(&RatFunc::from_laurent(&g)).unwrap();
        prop_assert_eq!(parse_ratfunc(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn ore_round_trip(x in arb_ore(Generator::Theta, 3), y in arb_ore(Generator::Ddt, 3)) {
        prop_assert_eq!(parse_ore(&x.to_string()).unwrap(), x.clone());
        // the zero element prints as "0" and comes back in Th
        let back = parse_ore(&y.to_string()).unwrap();
        prop_assert_eq!(back.to_generator(Generator::Ddt), y);
    }

    #[test]
    fn modvec_round_trip(v in arb_modvec()) {
        prop_assert_eq!(parse_modvec(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn module_round_trip(m in arb_module()) {
        prop_assert_eq!(parse_module(&m.to_string()).unwrap(), m);
    }
}
