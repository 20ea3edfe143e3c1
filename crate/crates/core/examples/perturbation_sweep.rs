//! Sweeps the perturbation rate and prints how LTSim-MMD responds for
//! positional and label noise.

use layout_metrics::collection::Sigma;
use layout_metrics::harness::{perturbation_sweep, synthetic_collection, PerturbKind, SweepConfig, SyntheticConfig};

fn main() -> layout_metrics::Result<()> {
    let real = synthetic_collection(&SyntheticConfig {
        layouts: 50,
        seed: 3,
        ..Default::default()
    });
    for kind in [PerturbKind::Positional, PerturbKind::Label] {
        let cfg = SweepConfig {
            rates: vec![0.1, 0.3, 0.5],
            trials: 2,
            kind,
            sigma: Sigma::Auto,
            workers: 1,
            ..Default::default()
        };
        for p in perturbation_sweep(&real, &cfg)? {
            println!("{kind:<10} rate {:.1} trial {}: mmd2 {:+.6}", p.rate, p.trial, p.mmd2);
        }
    }
    Ok(())
}
