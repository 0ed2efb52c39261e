//! Reducibility witnesses and irreducibility certificates for Th^2 - f.

use vtwist::expr::{parse_laurent, parse_poly};
use vtwist::factor::{
    complete_square, construct_reducible, irreducible_by_degree, polynomial_minus_t, search_witness,
    verify_factorization, verify_transport, SearchOutcome, SearchSpec,
};
use vtwist::Scalar;

fn main() -> vtwist::Result<()> {
    let h = parse_laurent("t - 3/2")?;
    let (f, w) = construct_reducible(&h, &[Scalar::one()])?;
    let (left, right) = w.factors();
    println!("f = {f}");
    println!("Th^2 - f = ({left})({right})");
    println!("expansion checks: {}", verify_factorization(&f, &w).passed);

    for src in ["t^3 + 1", "t^2 + t^-3", "t^2 - 4*t + 1/4"] {
        let f = parse_laurent(src)?;
        match irreducible_by_degree(&f) {
            Some(c) => println!("{src}: irreducible, {} {}", c.kind(), c.data()),
            None => println!("{src}: no degree certificate"),
        }
    }

    let spec = SearchSpec {
        pole_candidates: vec![Scalar::from_int(2), Scalar::one(), Scalar::from_int(-1)],
        h_bounds: (-2, 2),
        coeff_box: vec![Scalar::zero(), Scalar::one()],
        budget: 10_000,
    };
    match search_witness(&f, &spec)? {
        SearchOutcome::Found { witness, subsets } => println!("search: {witness} after {subsets} subsets"),
        SearchOutcome::NotFound { explored, .. } => println!("search: nothing in {explored} branches"),
    }

    // Th^2 + 2 f1 Th + f2 reduces to Th^2 - F; a witness for F transports back.
    let f1 = parse_laurent("t")?;
    let f2 = &parse_laurent("t + t^2")? - &f;
    println!("F = {}", complete_square(&f1, &f2));
    println!("transported factors check: {}", verify_transport(&f1, &f2, &w));

    let (cert, beta) = polynomial_minus_t(&parse_poly("t^3 + 2")?)?;
    println!("{}: {beta}", cert.kind());
    Ok(())
}
