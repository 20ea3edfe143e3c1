//! Kendall rank correlation between measures over random layout pairs.

use layout_metrics::harness::{kendall_tau, measure_correlation, synthetic_collection, SyntheticConfig};
use layout_metrics::measures::{MeasureKind, MeasureParams};

fn main() -> layout_metrics::Result<()> {
    println!(
        "tau-b with ties: {:.6}",
        kendall_tau(&[1.0, 2.0, 2.0, 3.0], &[1.0, 3.0, 2.0, 4.0])?
    );

    let c = synthetic_collection(&SyntheticConfig {
        layouts: 60,
        seed: 6,
        ..Default::default()
    });
    let pairs: Vec<_> = c.layouts.chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect();
    let measures = [
        MeasureKind::Ltsim,
        MeasureKind::LtsimEmd,
        MeasureKind::Docsim,
        MeasureKind::Meaniou,
    ];
    let m = measure_correlation(&pairs, &measures, &MeasureParams::default())?;
    print!("{:>10}", "");
    for k in &m.measures {
        print!("{:>10}", k.name());
    }
    println!();
    for (k, row) in m.measures.iter().zip(&m.tau) {
        print!("{:>10}", k.name());
        for t in row {
            print!("{t:>10.3}");
        }
        println!();
    }
    Ok(())
}
