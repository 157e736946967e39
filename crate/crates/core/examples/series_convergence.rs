//! Exponentials in the completed algebra: exp(q) converges for R < 1 and
//! diverges for R > 1, and the star exponential has a closed form.

use weylstar::basis::GeneratorBasis;
use weylstar::element::Element;
use weylstar::forms::presets;
use weylstar::scalar::{q, Exact};
use weylstar::seminorm::WeightedSeminorm;
use weylstar::series::{convergence_diagnosis, exp_element, iterated_star_partial, star_exp, star_exp_taylor_partial};

fn main() -> weylstar::error::Result<()> {
    let b = GeneratorBasis::even(&["q", "p"])?;
    let s = exp_element(&Element::<Exact>::parse(&b, "q")?, 40)?;
    let p = WeightedSeminorm::from_named(&b, &[("q", 2.0), ("p", 1.0)])?;
    for r in [0.5, 0.9, 1.0, 1.1] {
        let rep = convergence_diagnosis(&s, &p, r)?;
        let last = rep.ratios.last().copied().flatten().unwrap_or(f64::NAN);
        println!("R = {r:<4} partial {:>12.6e}  last ratio {last:>8.4}  {}", rep.partials.last().unwrap(), rep.verdict.name());
    }

    let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")])?;
    let w = Element::parse(&b, "q + 2*p")?;
    let (t, z) = (q(1, 2), q(3, 4));
    let closed = star_exp(&w, &t, &z, &std, 4)?;
    println!("Exp(t w) = e^{{{}}} * e^{{t w}}", weylstar::scalar::format_rational(&closed.central().re));
    let iterated = iterated_star_partial(&w, &t, &z, &std, 6)?;
    let taylor = star_exp_taylor_partial(&w, &t, &z, &std, 6)?;
    println!("iterated star partial matches closed form through degree 6: {}", iterated == taylor);
    Ok(())
}
