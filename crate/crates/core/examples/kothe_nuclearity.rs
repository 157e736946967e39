//! Summability of Köthe column ratios for the seminorms p_R.

use weylstar::basis::GeneratorBasis;
use weylstar::kothe::{nuclearity_diagnostic, KotheColumn, KotheMatrix, NuclearityMode};
use weylstar::seminorm::WeightedSeminorm;

fn main() -> weylstar::error::Result<()> {
    let b = GeneratorBasis::even(&["x"])?;
    let unit = WeightedSeminorm::unit(&b);
    for (label, small) in [("R = 1/2 vs 1", 0.5), ("R = 1 vs 1  ", 1.0)] {
        let columns = [KotheColumn { seminorm: unit.clone(), r: small }, KotheColumn { seminorm: unit.clone(), r: 1.0 }];
        let k = KotheMatrix::new(&columns, 200)?;
        for rep in nuclearity_diagnostic(&k, NuclearityMode::Strong { levels: 3 })? {
            println!("{label}  alpha {:<5} sum {:>10.4}  {:?}", rep.alpha, rep.partial_sums.last().unwrap(), rep.verdict);
        }
    }
    Ok(())
}
