//! The Poisson bracket and the equivalence between star products that
//! share an antisymmetric part.

use weylstar::basis::GeneratorBasis;
use weylstar::element::Element;
use weylstar::forms::{lambda_parts, presets};
use weylstar::scalar::{q, Coeff, Exact};
use weylstar::star::{equivalence_transform, graded_commutator, poisson_bracket, star};

fn main() -> weylstar::error::Result<()> {
    let b = GeneratorBasis::even(&["q", "p"])?;
    let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")])?;
    let weyl = presets::weyl::<Exact>(&b, &[("q", "p")])?;
    let z = q(1, 2);
    let a = Element::parse(&b, "q^2*p")?;
    let c = Element::parse(&b, "q*p^2")?;

    println!("{{a, c}}          = {}", poisson_bracket(&a, &c, &std)?);
    println!("[a, c] standard = {}", graded_commutator(&a, &c, &z, &std)?);
    println!("[a, c] weyl     = {}", graded_commutator(&a, &c, &z, &weyl)?);

    let g = lambda_parts(&std).0.scale(&-Exact::one());
    let t = |x: &Element<Exact>| equivalence_transform(x, &z, &g);
    let lhs = t(&star(&a, &c, &z, &std)?)?;
    let rhs = star(&t(&a)?, &t(&c)?, &z, &weyl)?;
    println!("T(a *std c)     = {lhs}");
    println!("T(a) *weyl T(c) = {rhs}");
    println!("intertwines: {}", lhs == rhs);
    Ok(())
}
