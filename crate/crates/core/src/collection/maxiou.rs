use std::collections::BTreeMap;

use serde::Serialize;

use crate::assignment::{max_weight_matching, WeightMatrix};
use crate::error::{Error, Result};
use crate::measures::maxiou_beta;
use crate::model::{LabelMultiset, LayoutCollection};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxIouReport {
    /// Mean layout-level Max.IoU over matched pairs.
    pub score: f64,
    pub matched: usize,
    /// Fraction of generated layouts that were matched.
    pub coverage: f64,
    /// Number of label multisets present in both collections.
    pub shared_groups: usize,
}

fn groups(c: &LayoutCollection) -> BTreeMap<LabelMultiset, Vec<usize>> {
    let mut out: BTreeMap<LabelMultiset, Vec<usize>> = BTreeMap::new();
    for (i, l) in c.iter().enumerate() {
        out.entry(l.label_multiset()).or_default().push(i);
    }
    out
}

/// Collection-level Max.IoU.
///
/// Layouts are grouped by label multiset. Within each group present in both
/// collections, real and generated layouts are paired by a maximum-weight
/// matching on layout-level Max.IoU. Layouts in groups found on one side
/// only are left out; `coverage` reports how many generated layouts counted.
pub fn maxiou_collection(real: &LayoutCollection, gen: &LayoutCollection) -> Result<MaxIouReport> {
    for c in [real, gen] {
        if c.is_empty() {
            return Err(Error::TooFewLayouts { required: 1, found: 0 });
        }
    }
    if real.vocabulary != gen.vocabulary {
        log::warn!("real and generated collections use different vocabularies; comparing category indices");
    }
    let real_groups = groups(real);
    let gen_groups = groups(gen);
    let mut total = 0.0;
    let mut matched = 0;
    let mut shared = 0;
    for (key, rows) in &real_groups {
        let Some(cols) = gen_groups.get(key) else { continue };
        shared += 1;
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(maxiou_beta(&real.layouts[i], &gen.layouts[j])?.value);
            }
        }
        let matching = max_weight_matching(&WeightMatrix::new(rows.len(), cols.len(), data)?);
        total += matching.total_weight;
        matched += matching.cardinality();
    }
    if matched == 0 {
        return Err(Error::NoComparablePairs);
    }
    Ok(MaxIouReport {
        score: total / matched as f64,
        matched,
        coverage: matched as f64 / gen.len() as f64,
        shared_groups: shared,
    })
}
