//! Compares synthetic collections with LTSim-MMD, once in matrix mode with
//! the automatic bandwidth and once streaming, and saves the EMD matrix.

use layout_metrics::collection::{ltsim_mmd_streaming, read_matrix, write_matrix, MmdReference, Sigma};
use layout_metrics::harness::{perturb, synthetic_collection, PerturbConfig, PerturbKind, SyntheticConfig};

fn main() -> layout_metrics::Result<()> {
    let real = synthetic_collection(&SyntheticConfig {
        layouts: 60,
        seed: 1,
        ..Default::default()
    });
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());

    let reference = MmdReference::new(&real, workers)?;
    println!("auto sigma {:.6}", reference.median_sigma()?);
    for rate in [0.0, 0.2, 0.5] {
        let gen = perturb(&real, &PerturbConfig::new(rate, PerturbKind::Positional, 42))?;
        let (report, blocks) = reference.evaluate_with_blocks(&gen, Sigma::Auto, workers)?;
        println!("positional noise {rate}: mmd2 {:+.6}", report.mmd2);
        if rate == 0.5 {
            let path = std::env::temp_dir().join("layout-metrics-example.ltpm");
            write_matrix(&path, &blocks.joint(), Some(report.sigma))?;
            let (m, sigma) = read_matrix(&path)?;
            println!(
                "saved {}x{} matrix to {} (sigma {:?})",
                m.rows(),
                m.cols(),
                path.display(),
                sigma
            );
        }
    }

    let other = synthetic_collection(&SyntheticConfig {
        layouts: 60,
        seed: 2,
        ..Default::default()
    });
    let report = ltsim_mmd_streaming(&real, &other, Sigma::Fixed(0.5), workers)?;
    println!("independent draw, sigma 0.5, streaming: mmd2 {:+.6}", report.mmd2);
    Ok(())
}
