//! Rectangular maximum-weight matching with forbidden entries. Cardinality
//! comes first, so a forbidden cell can force a lighter overall matching.

use layout_metrics::assignment::{max_weight_matching, WeightMatrix};

fn main() -> layout_metrics::Result<()> {
    let weights = vec![
        0.9, 0.8, 0.0, //
        0.7, 0.0, 0.0, //
    ];
    let forbidden = vec![
        false, false, true, //
        false, true, true, //
    ];
    let w = WeightMatrix::with_mask(2, 3, weights, forbidden)?;
    let m = max_weight_matching(&w);
    println!(
        "pairs {:?}, cardinality {}, weight {:.2}",
        m.pairs,
        m.cardinality(),
        m.total_weight
    );
    Ok(())
}
