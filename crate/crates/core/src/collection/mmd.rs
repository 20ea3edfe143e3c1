use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::pairwise::{cross_block, mirror, upper_triangle};
use super::{pool, Kahan, MatrixKind, PairwiseMatrix};
use crate::error::{Error, Result};
use crate::measures::{check_sigma, ltsim_emd_value};
use crate::model::{Layout, LayoutCollection};

/// Kernel bandwidth: an explicit value, or the median EMD among real pairs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Sigma {
    #[default]
    Auto,
    Fixed(f64),
}

impl FromStr for Sigma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("auto") {
            return Ok(Sigma::Auto);
        }
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("sigma must be \"auto\" or a number, got {s:?}")))?;
        check_sigma(v)?;
        Ok(Sigma::Fixed(v))
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Auto => f.write_str("auto"),
            Sigma::Fixed(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Sigma {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Sigma::Auto => s.serialize_str("auto"),
            Sigma::Fixed(v) => s.serialize_f64(*v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MmdReport {
    /// Unbiased squared MMD estimate; may be slightly negative.
    pub mmd2: f64,
    pub sigma: f64,
    /// Whether `sigma` came from the median heuristic.
    pub sigma_auto: bool,
    pub s: usize,
    pub t: usize,
    pub pair_count: u64,
}

/// Materialized EMD blocks of one estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct MmdBlocks {
    pub real: PairwiseMatrix,
    pub gen: PairwiseMatrix,
    pub cross: PairwiseMatrix,
}

impl MmdBlocks {
    /// The `(s + t) x (s + t)` EMD matrix over real layouts followed by
    /// generated ones.
    pub fn joint(&self) -> PairwiseMatrix {
        let (s, t) = (self.real.rows(), self.gen.rows());
        let n = s + t;
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = match (i < s, j < s) {
                    (true, true) => self.real.get(i, j),
                    (false, false) => self.gen.get(i - s, j - s),
                    (true, false) => self.cross.get(i, j - s),
                    (false, true) => self.cross.get(j, i - s),
                };
            }
        }
        let ids: Vec<String> = self.real.row_ids.iter().chain(&self.gen.row_ids).cloned().collect();
        PairwiseMatrix {
            row_ids: ids.clone(),
            col_ids: ids,
            values,
            kind: MatrixKind::Emd,
        }
    }
}

fn row_kernel(row: &[f64], sigma: f64) -> f64 {
    row.iter().map(|&d| (-d / sigma).exp()).collect::<Kahan>().total()
}

/// Kernel sum over stored rows: per-row compensated partials, combined in
/// row order.
fn kernel_sum(rows: &[Vec<f64>], sigma: f64) -> f64 {
    rows.iter().map(|r| row_kernel(r, sigma)).collect::<Kahan>().total()
}

/// Same reduction as [`kernel_sum`], without keeping the rows.
fn streamed_kernel_sum(
    rows: usize,
    row: impl Fn(usize) -> Result<Vec<f64>> + Sync,
    sigma: f64,
    pool: &rayon::ThreadPool,
) -> Result<f64> {
    use rayon::prelude::*;
    let partials: Vec<f64> = pool.install(|| {
        (0..rows)
            .into_par_iter()
            .map(|i| row(i).map(|r| row_kernel(&r, sigma)))
            .collect::<Result<_>>()
    })?;
    Ok(partials.into_iter().collect::<Kahan>().total())
}

fn triangle_row(layouts: &[Layout], i: usize) -> Result<Vec<f64>> {
    layouts[i + 1..]
        .iter()
        .map(|b| ltsim_emd_value(&layouts[i], b))
        .collect()
}

fn cross_row(a: &[Layout], b: &[Layout], i: usize) -> Result<Vec<f64>> {
    b.iter().map(|y| ltsim_emd_value(&a[i], y)).collect()
}

fn require_pairs(c: &LayoutCollection) -> Result<()> {
    if c.len() < 2 {
        return Err(Error::TooFewLayouts {
            required: 2,
            found: c.len(),
        });
    }
    c.iter().try_for_each(Layout::ensure_non_empty)
}

fn lower_median(upper: &[Vec<f64>]) -> Result<f64> {
    let mut all: Vec<f64> = upper.concat();
    let k = (all.len() - 1) / 2;
    let (_, &mut median, _) = all.select_nth_unstable_by(k, f64::total_cmp);
    if median > 0.0 {
        Ok(median)
    } else {
        Err(Error::DegenerateSigma)
    }
}

fn estimate(kxx: f64, kyy: f64, kxy: f64, s: usize, t: usize) -> f64 {
    let (sf, tf) = (s as f64, t as f64);
    2.0 * kxx / (sf * (sf - 1.0)) + 2.0 * kyy / (tf * (tf - 1.0)) - 2.0 * kxy / (sf * tf)
}

fn pair_count(s: usize, t: usize) -> u64 {
    let (s, t) = (s as u64, t as u64);
    s * (s - 1) / 2 + t * (t - 1) / 2 + s * t
}

/// Lower median of the EMD over unordered distinct pairs of `real`.
pub fn median_sigma(real: &LayoutCollection, workers: usize) -> Result<f64> {
    require_pairs(real)?;
    lower_median(&upper_triangle(&real.layouts, &pool(workers)?)?)
}

/// The real side of LTSim-MMD, computed once and reused against any number
/// of generated collections.
#[derive(Debug, Clone)]
pub struct MmdReference<'a> {
    real: &'a LayoutCollection,
    upper: Vec<Vec<f64>>,
}

impl<'a> MmdReference<'a> {
    pub fn new(real: &'a LayoutCollection, workers: usize) -> Result<Self> {
        require_pairs(real)?;
        let upper = upper_triangle(&real.layouts, &pool(workers)?)?;
        Ok(MmdReference { real, upper })
    }

    pub fn real(&self) -> &LayoutCollection {
        self.real
    }

    pub fn median_sigma(&self) -> Result<f64> {
        lower_median(&self.upper)
    }

    pub fn resolve(&self, sigma: Sigma) -> Result<f64> {
        match sigma {
            Sigma::Auto => self.median_sigma(),
            Sigma::Fixed(v) => check_sigma(v).map(|_| v),
        }
    }

    pub fn real_matrix(&self) -> PairwiseMatrix {
        let ids: Vec<String> = self.real.iter().map(|l| l.id.clone()).collect();
        PairwiseMatrix {
            row_ids: ids.clone(),
            col_ids: ids,
            values: mirror(self.real.len(), &self.upper),
            kind: MatrixKind::Emd,
        }
    }

    fn report(&self, sigma: Sigma, value: f64, kxx: f64, kyy: f64, kxy: f64, t: usize) -> MmdReport {
        let s = self.real.len();
        MmdReport {
            mmd2: estimate(kxx, kyy, kxy, s, t),
            sigma: value,
            sigma_auto: sigma == Sigma::Auto,
            s,
            t,
            pair_count: pair_count(s, t),
        }
    }

    /// Estimate against `gen` without materializing the generated blocks.
    pub fn evaluate(&self, gen: &LayoutCollection, sigma: Sigma, workers: usize) -> Result<MmdReport> {
        require_pairs(gen)?;
        let value = self.resolve(sigma)?;
        let pool = pool(workers)?;
        let (r, g) = (&self.real.layouts, &gen.layouts);
        let kxx = kernel_sum(&self.upper, value);
        let kyy = streamed_kernel_sum(g.len(), |i| triangle_row(g, i), value, &pool)?;
        let kxy = streamed_kernel_sum(r.len(), |i| cross_row(r, g, i), value, &pool)?;
        Ok(self.report(sigma, value, kxx, kyy, kxy, gen.len()))
    }

    /// Estimate against `gen`, also returning every EMD block.
    pub fn evaluate_with_blocks(
        &self,
        gen: &LayoutCollection,
        sigma: Sigma,
        workers: usize,
    ) -> Result<(MmdReport, MmdBlocks)> {
        require_pairs(gen)?;
        let value = self.resolve(sigma)?;
        let pool = pool(workers)?;
        let gen_upper = upper_triangle(&gen.layouts, &pool)?;
        let cross = cross_block(&self.real.layouts, &gen.layouts, &pool)?;
        let kxx = kernel_sum(&self.upper, value);
        let kyy = kernel_sum(&gen_upper, value);
        let kxy = kernel_sum(&cross, value);
        let report = self.report(sigma, value, kxx, kyy, kxy, gen.len());
        let gen_ids: Vec<String> = gen.iter().map(|l| l.id.clone()).collect();
        let real = self.real_matrix();
        let blocks = MmdBlocks {
            cross: PairwiseMatrix {
                row_ids: real.row_ids.clone(),
                col_ids: gen_ids.clone(),
                values: cross.concat(),
                kind: MatrixKind::Emd,
            },
            gen: PairwiseMatrix {
                row_ids: gen_ids.clone(),
                col_ids: gen_ids,
                values: mirror(gen.len(), &gen_upper),
                kind: MatrixKind::Emd,
            },
            real,
        };
        Ok((report, blocks))
    }
}

/// Unbiased squared MMD between `real` and `gen` under the kernel
/// `exp(-EMD / sigma)`, with all EMD blocks materialized.
pub fn ltsim_mmd(real: &LayoutCollection, gen: &LayoutCollection, sigma: Sigma, workers: usize) -> Result<MmdReport> {
    require_pairs(gen)?;
    MmdReference::new(real, workers)?
        .evaluate_with_blocks(gen, sigma, workers)
        .map(|(report, _)| report)
}

/// [`ltsim_mmd`] accumulating block sums row by row instead of storing them.
/// The real block is still stored when `sigma` is [`Sigma::Auto`], since the
/// median needs every real pair. Both variants return identical reports.
pub fn ltsim_mmd_streaming(
    real: &LayoutCollection,
    gen: &LayoutCollection,
    sigma: Sigma,
    workers: usize,
) -> Result<MmdReport> {
    require_pairs(gen)?;
    match sigma {
        Sigma::Auto => MmdReference::new(real, workers)?.evaluate(gen, sigma, workers),
        Sigma::Fixed(value) => {
            require_pairs(real)?;
            check_sigma(value)?;
            let pool = pool(workers)?;
            let (r, g) = (&real.layouts, &gen.layouts);
            let kxx = streamed_kernel_sum(r.len(), |i| triangle_row(r, i), value, &pool)?;
            let kyy = streamed_kernel_sum(g.len(), |i| triangle_row(g, i), value, &pool)?;
            let kxy = streamed_kernel_sum(r.len(), |i| cross_row(r, g, i), value, &pool)?;
            let (s, t) = (real.len(), gen.len());
            Ok(MmdReport {
                mmd2: estimate(kxx, kyy, kxy, s, t),
                sigma: value,
                sigma_auto: false,
                s,
                t,
                pair_count: pair_count(s, t),
            })
        }
    }
}
