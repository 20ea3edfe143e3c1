use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pool;
use crate::error::{Error, Result};
use crate::measures::ltsim_emd_value;
use crate::model::{Layout, LayoutCollection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Emd,
    Similarity,
}

impl MatrixKind {
    pub(crate) fn code(self) -> u8 {
        match self {
            MatrixKind::Emd => 0,
            MatrixKind::Similarity => 1,
        }
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(MatrixKind::Emd),
            1 => Some(MatrixKind::Similarity),
            _ => None,
        }
    }
}

/// Dense row-major matrix of pairwise values between two id lists.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    pub row_ids: Vec<String>,
    pub col_ids: Vec<String>,
    pub values: Vec<f64>,
    pub kind: MatrixKind,
}

impl PairwiseMatrix {
    pub fn new(row_ids: Vec<String>, col_ids: Vec<String>, values: Vec<f64>, kind: MatrixKind) -> Result<Self> {
        if values.len() != row_ids.len() * col_ids.len() {
            return Err(Error::DimensionMismatch {
                expected: (row_ids.len(), col_ids.len()),
                found: (values.len() / col_ids.len().max(1), col_ids.len()),
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite matrix value {v}")));
        }
        Ok(PairwiseMatrix {
            row_ids,
            col_ids,
            values,
            kind,
        })
    }

    pub fn rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn cols(&self) -> usize {
        self.col_ids.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols()..(i + 1) * self.cols()]
    }

    /// `exp(-value / sigma)` applied entrywise to an EMD matrix.
    pub fn to_similarity(&self, sigma: f64) -> Result<PairwiseMatrix> {
        crate::measures::check_sigma(sigma)?;
        if self.kind != MatrixKind::Emd {
            return Err(Error::InvalidArgument("matrix already holds similarities".into()));
        }
        Ok(PairwiseMatrix {
            row_ids: self.row_ids.clone(),
            col_ids: self.col_ids.clone(),
            values: self.values.iter().map(|&d| (-d / sigma).exp()).collect(),
            kind: MatrixKind::Similarity,
        })
    }
}

fn ids(c: &LayoutCollection) -> Vec<String> {
    c.iter().map(|l| l.id.clone()).collect()
}

fn check_layouts(c: &LayoutCollection) -> Result<()> {
    if c.is_empty() {
        return Err(Error::TooFewLayouts { required: 1, found: 0 });
    }
    c.iter().try_for_each(Layout::ensure_non_empty)
}

/// EMDs of every pair `(a[i], b[j])` with `i < j`, row-major, when `a` and
/// `b` are the same list.
pub(crate) fn upper_triangle(layouts: &[Layout], pool: &rayon::ThreadPool) -> Result<Vec<Vec<f64>>> {
    let n = layouts.len();
    pool.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                layouts[i + 1..]
                    .iter()
                    .map(|b| ltsim_emd_value(&layouts[i], b))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect()
    })
}

/// Full `a x b` EMD block, one inner vector per row.
pub(crate) fn cross_block(a: &[Layout], b: &[Layout], pool: &rayon::ThreadPool) -> Result<Vec<Vec<f64>>> {
    pool.install(|| {
        a.par_iter()
            .map(|x| b.iter().map(|y| ltsim_emd_value(x, y)).collect::<Result<Vec<f64>>>())
            .collect()
    })
}

/// Mirrors an upper triangle into a dense symmetric matrix with a zero diagonal.
pub(crate) fn mirror(n: usize, upper: &[Vec<f64>]) -> Vec<f64> {
    let mut values = vec![0.0; n * n];
    for (i, row) in upper.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            let j = i + 1 + k;
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    values
}

/// LTSim EMD between every layout of `a` (rows) and `b` (columns).
///
/// Each entry is computed on its own, so the matrix is bit-identical for
/// every worker count. Passing the same collection twice computes only the
/// upper triangle and mirrors it, as does [`pairwise_emd_self`].
pub fn pairwise_emd(a: &LayoutCollection, b: &LayoutCollection, workers: usize) -> Result<PairwiseMatrix> {
    if std::ptr::eq(a, b) {
        return pairwise_emd_self(a, workers);
    }
    check_layouts(a)?;
    check_layouts(b)?;
    let pool = pool(workers)?;
    let values = cross_block(&a.layouts, &b.layouts, &pool)?.concat();
    PairwiseMatrix::new(ids(a), ids(b), values, MatrixKind::Emd)
}

/// Symmetric EMD matrix of a collection against itself.
pub fn pairwise_emd_self(c: &LayoutCollection, workers: usize) -> Result<PairwiseMatrix> {
    check_layouts(c)?;
    let pool = pool(workers)?;
    let upper = upper_triangle(&c.layouts, &pool)?;
    PairwiseMatrix::new(ids(c), ids(c), mirror(c.len(), &upper), MatrixKind::Emd)
}
