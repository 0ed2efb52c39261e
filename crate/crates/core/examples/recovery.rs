//! Recovering the t-action of a twisted module from its Virasoro action.

use vtwist::expr::{parse_modvec, parse_module};
use vtwist::structure::{recover_c, recover_t_action};

fn main() -> vtwist::Result<()> {
    let m = parse_module("kquotient(beta=Dt^2 - t, b=-1/2)")?;
    let v = parse_modvec("B(1,0) - 3*B(-2,1)")?;
    println!("{m}, v = {v}");
    println!("w_0 acts by {}", recover_c(&m, &v)?);
    for k in [-2, 1, 3] {
        let got = recover_t_action(&m, k, &v)?;
        println!("t^{k} v = {got}  (matches t_act: {})", got == m.t_act(k, &v)?);
    }
    let degenerate = parse_module("natural(b=1)")?;
    match recover_t_action(&degenerate, 1, &parse_modvec("T2")?) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("{degenerate}: {e}"),
    }
    Ok(())
}
