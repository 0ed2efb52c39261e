//! Fingerprints and isomorphism decisions between twisted modules.

use vtwist::expr::parse_module;
use vtwist::structure::{decide_isomorphism, fingerprint};

fn main() -> vtwist::Result<()> {
    let pairs = [
        ("omega(lambda=2, b=3)", "omega(lambda=5, b=3)"),
        ("omega(lambda=2, b=3)", "omega(lambda=2, b=-2)"),
        ("series(alpha=1/2, b=0)", "series(alpha=1/2, b=1)"),
        ("series(alpha=1/3, b=2)", "series(alpha=7/3, b=2)"),
        ("natural(b=0)", "natural(b=1)"),
        ("kquotient(beta=Th^2 - t, b=1/2)", "kquotient(beta=Th^2 - t^2, b=1/2)"),
    ];
    for (a, b) in pairs {
        let (a, b) = (parse_module(a)?, parse_module(b)?);
        let d = decide_isomorphism(&a, &b);
        println!("{a}  vs  {b}\n  {:?}: {}", d.verdict, d.reason);
    }
    let f = fingerprint(&parse_module("omega(lambda=1+i, b=3)")?)?;
    println!("fingerprint: {}", serde_json::to_string(&f).expect("serializes"));
    Ok(())
}
