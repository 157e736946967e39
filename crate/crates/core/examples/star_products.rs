//! Star products of polynomials for a few choices of bilinear form.

use weylstar::basis::{GeneratorBasis, Parity};
use weylstar::element::Element;
use weylstar::forms::{presets, BilinearForm};
use weylstar::scalar::{q, Exact};
use weylstar::star::star;

fn main() -> weylstar::error::Result<()> {
    let b = GeneratorBasis::even(&["q", "p"])?;
    let z = q(1, 1);
    let (qq, pp) = (Element::<Exact>::parse(&b, "q")?, Element::parse(&b, "p")?);
    for (name, lambda) in [
        ("standard", presets::standard_ordered(&b, &[("q", "p")])?),
        ("weyl", presets::weyl(&b, &[("q", "p")])?),
        ("darboux", presets::darboux(&b, &[("q", "p")])?),
    ] {
        println!("{name:>8}: q*p = {}   p*q = {}", star(&qq, &pp, &z, &lambda)?, star(&pp, &qq, &z, &lambda)?);
    }

    let weyl = presets::weyl(&b, &[("q", "p")])?;
    let a = Element::parse(&b, "q^2*p + 3*q")?;
    let c = Element::parse(&b, "p^3 - q*p")?;
    println!("(q^2*p + 3*q) * (p^3 - q*p) = {}", star(&a, &c, &z, &weyl)?);

    let odd = GeneratorBasis::new([("e1", Parity::Odd), ("e2", Parity::Odd)])?;
    let clifford = BilinearForm::new(&odd, vec![vec![q(1, 2), q(0, 1)], vec![q(0, 1), q(1, 2)]])?;
    let (e1, e2) = (Element::parse(&odd, "e1")?, Element::parse(&odd, "e2")?);
    println!("clifford: e1*e1 = {}   e1*e2 = {}", star(&e1, &e1, &z, &clifford)?, star(&e1, &e2, &z, &clifford)?);
    Ok(())
}
