//! Normal-form arithmetic in K = C[t,t^-1][Th].

use vtwist::expr::parse_ore;
use vtwist::{make_dn, Generator, Scalar};

fn main() -> vtwist::Result<()> {
    let x = parse_ore("Th^2 + t*Th")?;
    let y = parse_ore("t^-1 - Th")?;
    println!("x       = {x}");
    println!("y       = {y}");
    println!("x*y     = {}", &x * &y);
    println!("[x, y]  = {}", x.bracket(&y)?);

    let (q, r) = x.right_divide(&parse_ore("Th - t")?)?;
    println!("x = ({q})*(Th - t) + {r}");

    let dt = parse_ore("t^-1*Th")?;
    println!("t^-1*Th in Dt form: {}", dt.to_generator(Generator::Ddt));

    let b = Scalar::ratio(2, 5);
    let (m, n) = (3, -1);
    let lhs = make_dn(m, &b).bracket(&make_dn(n, &b))?;
    let rhs = make_dn(m + n, &b).scale(&Scalar::from_int(n - m));
    println!("[D_3, D_-1] = {lhs}  (equals -4 D_2: {})", lhs == rhs);
    Ok(())
}
