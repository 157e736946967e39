//! The covariant Peierls bracket on a periodic lattice and its agreement
//! with the canonical bracket of Cauchy data.

use num_rational::BigRational;
use weylstar::element::Element;
use weylstar::lattice::{generator_basis, LatticeSpacetime};
use weylstar::scalar::{format_rational, q};
use weylstar::star::star;

fn main() -> weylstar::error::Result<()> {
    let lat = LatticeSpacetime::new(12, 8, BigRational::new(1.into(), 4.into()))?;
    let t0 = 5;
    let phi = lat.delta(4, 2)?;
    let psi = lat.delta(7, 3)?;
    let far = lat.delta(4, 6)?;
    let cov = lat.lambda_cov(&phi, &psi)?;
    let canon = lat.lambda_sigma(&lat.rho_sigma(&phi, t0)?, &lat.rho_sigma(&psi, t0)?)?;
    println!("covariant {}  canonical {}", format_rational(&cov), format_rational(&canon));
    println!("spacelike pair: {}", format_rational(&lat.lambda_cov(&phi, &far)?));

    let kernel = lat.kernel_report(t0)?;
    println!("ker rho: dim {} = rank D {}: {}", kernel.kernel_dim, kernel.rank_image, kernel.holds());
    let slab = lat.slab_representative(&lat.delta(9, 1)?, t0)?;
    println!("slab representative of delta(9, 1) lives on rows {:?}", slab.time_support());

    let lambda = lat.covariant_weyl_generators(&[phi, psi], &BigRational::from_integer(1.into()))?;
    let b = generator_basis(2)?;
    let (a, c) = (Element::parse(&b, "phi0")?, Element::parse(&b, "phi1")?);
    println!("phi0 * phi1 = {}", star(&a, &c, &q(1, 1), &lambda)?);
    Ok(())
}
