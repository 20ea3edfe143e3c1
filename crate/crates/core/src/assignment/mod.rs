//! Exact combinatorial solvers.
//!
//! * [`max_weight_matching`]: rectangular maximum-weight bipartite matching
//!   with forbidden entries, maximizing cardinality first.
//! * [`solve_transport`]: the transportation problem with uniform marginals
//!   `1/m` (rows) and `1/n` (columns), solved exactly as an integer flow.

mod matching;
mod network_simplex;
mod transport;

use crate::error::{Error, Result};

pub use matching::{max_weight_matching, Matching};
pub(crate) use transport::uniform_objective;
pub use transport::{solve_transport, transport_objective, TransportPlan};

/// Dense row-major `rows x cols` matrix of finite weights, with an optional
/// mask of forbidden entries.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    forbidden: Option<Vec<bool>>,
}

impl WeightMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        Self::build(rows, cols, data, None)
    }

    /// `forbidden[i * cols + j] == true` excludes entry `(i, j)`. Forbidden
    /// entries may hold any value, including non-finite ones.
    pub fn with_mask(rows: usize, cols: usize, data: Vec<f64>, forbidden: Vec<bool>) -> Result<Self> {
        Self::build(rows, cols, data, Some(forbidden))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Builds from nested rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: (rows.len(), cols),
                found: (rows.len(), bad.len()),
            });
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    fn build(rows: usize, cols: usize, data: Vec<f64>, forbidden: Option<Vec<bool>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "weight matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows, cols),
                found: (data.len() / cols.max(1), cols),
            });
        }
        if let Some(mask) = &forbidden {
            if mask.len() != data.len() {
                return Err(Error::InvalidArgument(format!(
                    "mask has {} entries, matrix has {}",
                    mask.len(),
                    data.len()
                )));
            }
        }
        let m = WeightMatrix {
            rows,
            cols,
            data,
            forbidden,
        };
        for i in 0..rows {
            for j in 0..cols {
                if !m.is_forbidden(i, j) && !m.get(i, j).is_finite() {
                    return Err(Error::InvalidArgument(format!("non-finite weight at ({i}, {j})")));
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn is_forbidden(&self, i: usize, j: usize) -> bool {
        self.forbidden.as_ref().is_some_and(|m| m[i * self.cols + j])
    }

    pub fn has_mask(&self) -> bool {
        self.forbidden.is_some()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}
