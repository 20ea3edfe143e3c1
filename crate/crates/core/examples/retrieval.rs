//! Nearest-neighbour retrieval: ranks a collection by similarity to one of
//! its layouts under two different measures.

use layout_metrics::harness::{retrieve, synthetic_collection, SyntheticConfig};
use layout_metrics::measures::{MeasureKind, MeasureParams};

fn main() -> layout_metrics::Result<()> {
    let c = synthetic_collection(&SyntheticConfig {
        layouts: 40,
        seed: 4,
        ..Default::default()
    });
    let query = &c.layouts[0];
    let params = MeasureParams::default();
    for measure in [MeasureKind::Ltsim, MeasureKind::Docsim] {
        let ranked = retrieve(query, &c, measure, 5, &params)?;
        println!("{measure} (skipped {}):", ranked.skipped);
        for (rank, item) in ranked.items.iter().enumerate() {
            println!("  {}. {:<8} {:.5}", rank + 1, item.id, item.score);
        }
    }
    Ok(())
}
