//! Collection-level Max.IoU: layouts are only compared within groups that
//! share the same label multiset.

use layout_metrics::collection::maxiou_collection;
use layout_metrics::harness::{perturb, synthetic_collection, PerturbConfig, PerturbKind, SyntheticConfig};

fn main() -> layout_metrics::Result<()> {
    let real = synthetic_collection(&SyntheticConfig {
        layouts: 80,
        max_elements: 4,
        categories: 2,
        seed: 5,
        ..Default::default()
    });
    for rate in [0.0, 0.1, 0.3] {
        let gen = perturb(&real, &PerturbConfig::new(rate, PerturbKind::Positional, 9))?;
        let r = maxiou_collection(&real, &gen)?;
        println!(
            "rate {rate}: score {:.4}, matched {}, coverage {:.2}, shared groups {}",
            r.score, r.matched, r.coverage, r.shared_groups
        );
    }
    Ok(())
}
