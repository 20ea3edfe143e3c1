use super::{MeasureKind, MeasureValue};
use crate::assignment::{max_weight_matching, WeightMatrix};
use crate::error::{Error, Result};
use crate::geometry::iou;
use crate::model::Layout;

/// Layout-level Max.IoU: mean IoU of the best one-to-one same-category
/// matching. Only defined for layouts with identical label multisets.
pub fn maxiou_beta(a: &Layout, b: &Layout) -> Result<MeasureValue> {
    a.ensure_non_empty()?;
    b.ensure_non_empty()?;
    if a.label_multiset() != b.label_multiset() {
        return Err(Error::MultisetMismatch {
            a: a.id.clone(),
            b: b.id.clone(),
        });
    }
    let n = a.len();
    let mut data = Vec::with_capacity(n * n);
    let mut forbidden = Vec::with_capacity(n * n);
    for ea in &a.elements {
        for eb in &b.elements {
            let same = ea.category == eb.category;
            forbidden.push(!same);
            data.push(if same { iou(&ea.bbox, &eb.bbox) } else { 0.0 });
        }
    }
    let matching = max_weight_matching(&WeightMatrix::with_mask(n, n, data, forbidden)?).require_cardinality(n)?;
    Ok(MeasureValue::new(
        MeasureKind::MaxiouBeta,
        matching.total_weight / n as f64,
    ))
}
