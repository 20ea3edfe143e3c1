//! Collection-level comparison: the deterministic parallel pairwise EMD
//! engine, the LTSim-MMD estimator and collection-level Max.IoU.
//!
//! Every pairwise value is computed independently of every other, and every
//! reduction runs over fixed index-ordered chunks, so results do not depend
//! on the number of worker threads.

mod matrix_io;
mod maxiou;
mod mmd;
mod pairwise;

pub use matrix_io::{read_matrix, sidecar_path, write_matrix, MatrixSidecar};
pub use maxiou::{maxiou_collection, MaxIouReport};
pub use mmd::{ltsim_mmd, ltsim_mmd_streaming, median_sigma, MmdBlocks, MmdReference, MmdReport, Sigma};
pub use pairwise::{pairwise_emd, pairwise_emd_self, MatrixKind, PairwiseMatrix};

use crate::error::{Error, Result};

/// A rayon pool with exactly `workers` threads.
pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {workers} workers: {e}")))
}

/// Compensated (Kahan) summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn total(self) -> f64 {
        self.sum
    }
}

impl FromIterator<f64> for Kahan {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut k = Kahan::default();
        for x in iter {
            k.add(x);
        }
        k
    }
}
