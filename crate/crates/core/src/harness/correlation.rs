use rayon::prelude::*;
use serde::Serialize;

use super::kendall_tau;
use crate::error::{Error, Result};
use crate::measures::{evaluate, MeasureKind, MeasureParams};
use crate::model::Layout;

/// Pairwise Kendall tau-b between the rankings that several measures induce
/// on the same list of layout pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    pub measures: Vec<MeasureKind>,
    pub tau: Vec<Vec<f64>>,
    /// Oriented scores (higher is more similar), one row per measure.
    #[serde(skip)]
    pub scores: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: MeasureKind, b: MeasureKind) -> Option<f64> {
        let i = self.measures.iter().position(|&m| m == a)?;
        let j = self.measures.iter().position(|&m| m == b)?;
        Some(self.tau[i][j])
    }
}

/// Scores every pair with every measure and correlates the rankings.
///
/// When Max.IoU is requested, all pairs must share their label multiset;
/// the offending pair indices are reported otherwise.
pub fn measure_correlation(
    pairs: &[(Layout, Layout)],
    measures: &[MeasureKind],
    params: &MeasureParams,
) -> Result<CorrelationMatrix> {
    if pairs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two pairs, got {}",
            pairs.len()
        )));
    }
    if measures.is_empty() {
        return Err(Error::InvalidArgument("no measures requested".into()));
    }
    if measures.contains(&MeasureKind::MaxiouBeta) {
        let bad: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a.label_multiset() != b.label_multiset())
            .map(|(i, _)| i)
            .collect();
        if !bad.is_empty() {
            return Err(Error::MultisetPrecheckFailed(bad));
        }
    }
    let scores: Vec<Vec<f64>> = measures
        .iter()
        .map(|&m| {
            pairs
                .par_iter()
                .map(|(a, b)| evaluate(m, a, b, params).map(|v| m.oriented(v.value)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let k = measures.len();
    let mut tau = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let t = kendall_tau(&scores[i], &scores[j])?;
            tau[i][j] = t;
            tau[j][i] = t;
        }
    }
    Ok(CorrelationMatrix {
        measures: measures.to_vec(),
        tau,
        scores,
    })
}
