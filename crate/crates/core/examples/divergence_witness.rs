//! Below R = 1/2 the star product is not continuous: the constant term of
//! f(p) * f(q) is a divergent series.

use weylstar::series::divergence_witness;

fn main() -> weylstar::error::Result<()> {
    let w = divergence_witness(0.25, 1.0, 12)?;
    println!("{:>3} {:>14} {:>14}", "l", "|term|", "|partial|");
    for (l, (t, s)) in w.terms.iter().zip(&w.partials).enumerate() {
        println!("{l:>3} {t:>14.4} {s:>14.4}");
    }
    Ok(())
}
