use super::{MeasureKind, MeasureValue};
use crate::assignment::{max_weight_matching, WeightMatrix};
use crate::error::Result;
use crate::geometry::{area, center_distance, shape_difference};
use crate::model::{Element, Layout};

/// Pair weight `min(area) * 2^-(center distance + shape difference)`.
fn weight(a: &Element, b: &Element) -> f64 {
    let alpha = area(&a.bbox).min(area(&b.bbox));
    alpha * (-(center_distance(&a.bbox, &b.bbox) + shape_difference(&a.bbox, &b.bbox))).exp2()
}

/// DocSim: mean pair weight of the maximum-weight same-category matching.
///
/// Cross-category pairs cannot be matched; elements left without a partner
/// are ignored. Returns 0 when the layouts share no category. Absolute values
/// depend on the size and shape conventions used here and are not comparable
/// with other implementations (flagged in `meta`).
pub fn docsim(a: &Layout, b: &Layout) -> Result<MeasureValue> {
    a.ensure_non_empty()?;
    b.ensure_non_empty()?;
    let (m, n) = (a.len(), b.len());
    let mut data = Vec::with_capacity(m * n);
    let mut forbidden = Vec::with_capacity(m * n);
    for ea in &a.elements {
        for eb in &b.elements {
            let same = ea.category == eb.category;
            forbidden.push(!same);
            data.push(if same { weight(ea, eb) } else { 0.0 });
        }
    }
    let matching = max_weight_matching(&WeightMatrix::with_mask(m, n, data, forbidden)?);
    let matched = matching.cardinality();
    let value = if matched == 0 {
        0.0
    } else {
        matching.total_weight / matched as f64
    };
    Ok(MeasureValue::new(MeasureKind::Docsim, value)
        .with("matched_pairs", matched)
        .with("size_term", "min-area")
        .with("shape_term", "l1-width-height")
        .with("comparable_across_implementations", false))
}
