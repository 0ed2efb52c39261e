//! The module families and their Virasoro actions.

use vtwist::expr::{parse_modvec, parse_module};
use vtwist::structure::{bracket_check, wk_check};

fn main() -> vtwist::Result<()> {
    let examples = [
        ("omega(lambda=2, b=1/2)", "E(2)"),
        ("kquotient(beta=Th^2 - t^2 + t, b=3)", "B(1,1)"),
        ("kquotient(beta=Dt^3 - t, b=0)", "B(0,2)"),
        ("fraction(poles=[1], alphas=[1/2], b=1/2)", "P(0,1) + T(-1)"),
        ("natural(b=1)", "T(3)"),
        ("vprime00", "T(-2)"),
    ];
    for (desc, vec) in examples {
        let m = parse_module(desc)?;
        let v = parse_modvec(vec)?;
        println!("{m}");
        for n in [-1, 0, 2] {
            println!("  d_{n} . {v} = {}", m.vir_act(n, &v)?);
        }
        let bracket = bracket_check(&m, 3, 6)?;
        print!("  bracket relation: {} ({} cases)", bracket.passed, bracket.cases);
        if m.twist().is_some() {
            let wk = wk_check(&m, 3, 6)?;
            print!(", w_k = b(b-1) t^k: {}", wk.passed);
        }
        println!();
    }
    Ok(())
}
