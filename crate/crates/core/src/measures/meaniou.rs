use std::collections::BTreeMap;

use super::raster::Mask;
use super::{MeasureKind, MeasureValue};
use crate::error::{Error, Result};
use crate::model::{Category, Layout};

pub const DEFAULT_RESOLUTION: usize = 256;

fn category_masks(l: &Layout, resolution: usize) -> BTreeMap<Category, Mask> {
    let mut masks = BTreeMap::new();
    for e in &l.elements {
        masks
            .entry(e.category)
            .or_insert_with(|| Mask::new(resolution))
            .fill_box(&e.bbox);
    }
    masks
}

/// Mean per-category IoU of rasterized segmentation maps.
///
/// Averages over the union of both layouts' categories. A category missing
/// from one side scores 0. When both masks of a category are empty (all
/// boxes too small to cover a cell center) the masks agree and it scores 1.
pub fn meaniou(a: &Layout, b: &Layout, resolution: usize) -> Result<MeasureValue> {
    a.ensure_non_empty()?;
    b.ensure_non_empty()?;
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let ma = category_masks(a, resolution);
    let mb = category_masks(b, resolution);
    let mut cats: Vec<Category> = ma.keys().chain(mb.keys()).copied().collect();
    cats.sort_unstable();
    cats.dedup();
    let total: f64 = cats
        .iter()
        .map(|c| match (ma.get(c), mb.get(c)) {
            (Some(x), Some(y)) => {
                let (inter, union) = x.overlap_counts(y);
                if union == 0 {
                    1.0
                } else {
                    inter as f64 / union as f64
                }
            }
            _ => 0.0,
        })
        .sum();
    Ok(MeasureValue::new(MeasureKind::Meaniou, total / cats.len() as f64)
        .with("resolution", resolution)
        .with("categories", cats.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BBox, Element};

    fn el(l: f64, t: f64, w: f64, h: f64, c: u32) -> Element {
        Element::new(BBox::new(l, t, w, h), Category(c))
    }

    #[test]
    fn identical_layouts_score_one() {
        let a = Layout::new("a", vec![el(0.1, 0.1, 0.3, 0.3, 0), el(0.2, 0.5, 0.7, 0.2, 1)]);
        assert_eq!(meaniou(&a, &a, 256).unwrap().value, 1.0);
    }

    #[test]
    fn relabeled_box_scores_zero() {
        let a = Layout::new("a", vec![el(0.1, 0.1, 0.3, 0.3, 0)]);
        let b = Layout::new("b", vec![el(0.1, 0.1, 0.3, 0.3, 1)]);
        assert_eq!(meaniou(&a, &b, 256).unwrap().value, 0.0);
    }

    #[test]
    fn half_canvas_overlap() {
        let a = Layout::new("a", vec![el(0.0, 0.0, 0.5, 1.0, 0)]);
        let b = Layout::new("b", vec![el(0.0, 0.0, 1.0, 1.0, 0)]);
        assert!((meaniou(&a, &b, 256).unwrap().value - 0.5).abs() < 1.0 / 256.0);
    }

    #[test]
    fn boxes_below_resolution_agree() {
        let a = Layout::new("a", vec![el(0.0, 0.0, 0.001, 0.001, 0)]);
        let b = Layout::new("b", vec![el(0.5, 0.5, 0.001, 0.001, 0)]);
        assert_eq!(meaniou(&a, &b, 8).unwrap().value, 1.0);
    }

    #[test]
    fn rejects_zero_resolution() {
        let a = Layout::new("a", vec![el(0.0, 0.0, 0.5, 0.5, 0)]);
        assert!(meaniou(&a, &a, 0).is_err());
    }
}
