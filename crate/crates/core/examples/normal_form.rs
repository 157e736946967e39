//! Exact normal form of the antisymmetric part of a bilinear form.

use weylstar::basis::{GeneratorBasis, Parity};
use weylstar::forms::BilinearForm;
use weylstar::normal_form::normal_form;
use weylstar::scalar::{format_rational, q};

fn main() -> weylstar::error::Result<()> {
    let b = GeneratorBasis::new([
        ("x", Parity::Even),
        ("y", Parity::Even),
        ("u", Parity::Even),
        ("e", Parity::Odd),
        ("f", Parity::Odd),
    ])?;
    let zero = || q(0, 1);
    let lambda = BilinearForm::new(
        &b,
        vec![
            vec![zero(), q(3, 1), q(1, 1), zero(), zero()],
            vec![q(-1, 1), zero(), q(2, 1), zero(), zero()],
            vec![q(-1, 1), q(-2, 1), zero(), zero(), zero()],
            vec![zero(), zero(), zero(), q(4, 1), q(1, 1)],
            vec![zero(), zero(), zero(), q(1, 1), q(-2, 1)],
        ],
    )?;
    let nf = normal_form(&lambda)?;
    let (d, k, r, s, t) = nf.invariants();
    println!("pairs {d}, even kernel {k}, odd signature ({r}, {s}, {t})");
    println!("unnormalized odd values: {:?}", nf.unnormalized.iter().map(format_rational).collect::<Vec<_>>());
    for row in &nf.normal {
        println!("  {}", row.iter().map(|v| format!("{:>5}", format_rational(v))).collect::<String>());
    }
    Ok(())
}
