//! Finding invariant subspaces inside a finite window of basis vectors.

use vtwist::expr::parse_module;
use vtwist::structure::{submodule_probe, verify_certificate};
use vtwist::{ModVec, Sym};

fn main() -> vtwist::Result<()> {
    let runs = [
        ("omega(lambda=2, b=1)", Sym::E(1)),
        ("omega(lambda=2, b=1/2)", Sym::E(0)),
        ("natural(b=0)", Sym::T(0)),
        ("natural(b=1)", Sym::T(2)),
    ];
    for (desc, seed) in runs {
        let m = parse_module(desc)?;
        let window = m.basis(7);
        let (report, cert) = submodule_probe(&m, Some(m.family()), &ModVec::basis(seed), 3, 4, &window)?;
        println!(
            "{m} from {seed}: {:?}, dim {} of {}, {} escapes",
            report.verdict, report.spanned_dim, report.window_dim, report.escapes
        );
        if let Some(cert) = cert {
            let basis: Vec<String> = cert.basis.iter().map(ToString::to_string).collect();
            println!("  basis [{}], re-verified: {}", basis.join(", "), verify_certificate(&m, &cert)?);
        }
    }
    Ok(())
}
