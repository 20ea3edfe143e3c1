use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{perturb, PerturbConfig, PerturbKind, DEFAULT_MAX_OFFSET};
use crate::collection::{MmdReference, Sigma};
use crate::error::{Error, Result};
use crate::model::LayoutCollection;

/// A grid of perturbation rates and seeded trials scored by LTSim-MMD
/// against the unperturbed collection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub rates: Vec<f64>,
    pub trials: usize,
    pub kind: PerturbKind,
    pub max_offset: f64,
    /// Trial `k` perturbs with seed `seed + k`.
    pub seed: u64,
    /// Keep only this fraction of each perturbed collection.
    pub subsample: Option<f64>,
    pub sigma: Sigma,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            rates: vec![0.1, 0.2, 0.3, 0.4, 0.5],
            trials: 10,
            kind: PerturbKind::Positional,
            max_offset: DEFAULT_MAX_OFFSET,
            seed: 0,
            subsample: None,
            sigma: Sigma::Auto,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub rate: f64,
    pub trial: usize,
    pub mmd2: f64,
    pub sigma: f64,
    pub gen_size: usize,
}

/// Scores `perturb(real, rate)` against `real` for every rate and trial.
///
/// The real block of the estimator is computed once. Within a trial every
/// rate shares the same seed, so elements selected at a lower rate are also
/// selected at every higher one.
pub fn perturbation_sweep(real: &LayoutCollection, cfg: &SweepConfig) -> Result<Vec<SweepPoint>> {
    if let Some(f) = cfg.subsample {
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "subsample fraction must lie in (0, 1], got {f}"
            )));
        }
    }
    let reference = MmdReference::new(real, cfg.workers)?;
    let mut points = Vec::with_capacity(cfg.rates.len() * cfg.trials);
    for trial in 0..cfg.trials {
        let seed = cfg.seed.wrapping_add(trial as u64);
        let keep = cfg.subsample.map(|f| {
            let n = real.len();
            let m = ((n as f64 * f).floor() as usize).clamp(2.min(n), n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed_5eed_5eed);
            let mut idx = sample(&mut rng, n, m).into_vec();
            idx.sort_unstable();
            idx
        });
        for &rate in &cfg.rates {
            let pcfg = PerturbConfig {
                rate,
                kind: cfg.kind,
                max_offset: cfg.max_offset,
                seed,
            };
            let mut gen = perturb(real, &pcfg)?;
            if let Some(idx) = &keep {
                gen = gen.select(idx);
            }
            let report = reference.evaluate(&gen, cfg.sigma, cfg.workers)?;
            points.push(SweepPoint {
                rate,
                trial,
                mmd2: report.mmd2,
                sigma: report.sigma,
                gen_size: gen.len(),
            });
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{synthetic_collection, SyntheticConfig};

    #[test]
    fn small_sweep_shape_and_determinism() {
        let real = synthetic_collection(&SyntheticConfig {
            layouts: 12,
            seed: 2,
            ..SyntheticConfig::default()
        });
        let cfg = SweepConfig {
            rates: vec![0.0, 0.5],
            trials: 2,
            subsample: Some(0.5),
            workers: 2,
            ..SweepConfig::default()
        };
        let points = perturbation_sweep(&real, &cfg).unwrap();
        assert_eq!(points.len(), 4);
        assert!(points.iter().all(|p| p.gen_size == 6));
        assert_eq!(
            points,
            perturbation_sweep(
                &real,
                &SweepConfig {
                    workers: 1,
                    ..cfg.clone()
                }
            )
            .unwrap()
        );
        assert!(perturbation_sweep(
            &real,
            &SweepConfig {
                subsample: Some(0.0),
                ..cfg
            }
        )
        .is_err());
    }
}
