//! Continuity estimates for the star product, the bracket and translations
//! in the seminorms p_R.

use weylstar::basis::GeneratorBasis;
use weylstar::element::Element;
use weylstar::forms::{presets, Functional};
use weylstar::scalar::{q, Exact};
use weylstar::seminorm::{
    p_r, verify_bracket_estimate, verify_product_estimate, verify_translation_estimate, WeightedSeminorm,
};

fn main() -> weylstar::error::Result<()> {
    let b = GeneratorBasis::even(&["q", "p"])?;
    let weyl = presets::weyl::<Exact>(&b, &[("q", "p")])?;
    let p = WeightedSeminorm::unit(&b);
    let a = Element::parse(&b, "q^3 - 2*q*p + 1/2")?;
    let c = Element::parse(&b, "p^4 + 3*q")?;
    println!("p_1(a) = {:.4}, p_1(c) = {:.4}", p_r(&a, &p, 1.0), p_r(&c, &p, 1.0));
    println!("{:>5} {:>4} {:>12} {:>12} {:>12} {:>12}", "R", "|z|", "star lhs", "star rhs", "bracket lhs", "bracket rhs");
    for r in [0.5, 0.75, 1.0, 1.5] {
        for z in [q(1, 2), q(1, 1), q(2, 1)] {
            let prod = verify_product_estimate(&a, &c, &z, &weyl, r, &p)?;
            let br = verify_bracket_estimate(&a, &c, &weyl, r, &p)?;
            assert!(prod.holds && br.holds);
            println!("{r:>5} {:>4} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}", z.re, prod.lhs, prod.rhs, br.lhs, br.rhs);
        }
    }
    let phi = Functional::new(&b, vec![q(1, 1), q(-1, 2)])?;
    let tr = verify_translation_estimate(&a, &phi, 1.0, &p)?;
    println!("translation: {:.4} <= {:.4}", tr.lhs, tr.rhs);
    Ok(())
}
