use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use super::raster::{center, Mask};
use super::{MeasureKind, MeasureValue};
use crate::assignment::uniform_objective;
use crate::error::{Error, Result};
use crate::model::{Category, Layout};

pub const DEFAULT_GRID: usize = 32;

/// Penalty for a category that only one layout contains: one unit of mass
/// moved across the canvas diagonal.
const MISSING_CATEGORY_PENALTY: f64 = SQRT_2;

fn sample(l: &Layout, grid: usize) -> Result<BTreeMap<Category, Mask>> {
    let mut masks: BTreeMap<Category, Mask> = BTreeMap::new();
    for e in &l.elements {
        masks
            .entry(e.category)
            .or_insert_with(|| Mask::new(grid))
            .fill_box(&e.bbox);
    }
    if let Some((c, _)) = masks.iter().find(|(_, m)| m.count() == 0) {
        return Err(Error::DegenerateSampling {
            layout: l.id.clone(),
            category: c.0,
            grid,
        });
    }
    Ok(masks)
}

fn point_cloud_emd(x: &Mask, y: &Mask, grid: usize) -> f64 {
    if x == y {
        return 0.0;
    }
    let px: Vec<(f64, f64)> = x.cells().map(|(c, r)| (center(c, grid), center(r, grid))).collect();
    let py: Vec<(f64, f64)> = y.cells().map(|(c, r)| (center(c, grid), center(r, grid))).collect();
    let mut cost = Vec::with_capacity(px.len() * py.len());
    for &(x0, y0) in &px {
        for &(x1, y1) in &py {
            cost.push((x1 - x0).hypot(y1 - y0));
        }
    }
    uniform_objective(px.len(), py.len(), &cost)
}

/// DocEMD: sum over categories of the exact EMD between the cell-center
/// point clouds covered by each layout's elements of that category.
///
/// Each side's points carry equal mass summing to 1 per category. A category
/// present on one side only costs `sqrt(2)`.
pub fn docemd(a: &Layout, b: &Layout, grid: usize) -> Result<MeasureValue> {
    a.ensure_non_empty()?;
    b.ensure_non_empty()?;
    if grid == 0 {
        return Err(Error::InvalidArgument("grid must be positive".into()));
    }
    let sa = sample(a, grid)?;
    let sb = sample(b, grid)?;
    let mut total = 0.0;
    let mut unmatched = 0usize;
    for (c, ma) in &sa {
        match sb.get(c) {
            Some(mb) => total += point_cloud_emd(ma, mb, grid),
            None => unmatched += 1,
        }
    }
    unmatched += sb.keys().filter(|c| !sa.contains_key(c)).count();
    total += unmatched as f64 * MISSING_CATEGORY_PENALTY;
    Ok(MeasureValue::new(MeasureKind::Docemd, total)
        .with("grid", grid)
        .with("unmatched_categories", unmatched))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BBox, Element};

    fn el(l: f64, t: f64, w: f64, h: f64, c: u32) -> Element {
        Element::new(BBox::new(l, t, w, h), Category(c))
    }

    #[test]
    fn identical_layouts_score_zero() {
        let a = Layout::new("a", vec![el(0.1, 0.1, 0.3, 0.3, 0), el(0.4, 0.5, 0.5, 0.2, 1)]);
        assert_eq!(docemd(&a, &a, 32).unwrap().value, 0.0);
    }

    #[test]
    fn translation_costs_its_distance() {
        let a = Layout::new("a", vec![el(0.0, 0.0, 0.5, 1.0, 0)]);
        let b = Layout::new("b", vec![el(0.5, 0.0, 0.5, 1.0, 0)]);
        let v = docemd(&a, &b, 32).unwrap().value;
        assert!((v - 0.5).abs() < 2.0 / 32.0, "{v}");
    }

    #[test]
    fn translation_of_smaller_box() {
        let a = Layout::new("a", vec![el(0.1, 0.2, 0.25, 0.25, 0)]);
        let b = Layout::new("b", vec![el(0.4, 0.6, 0.25, 0.25, 0)]);
        let v = docemd(&a, &b, 16).unwrap().value;
        assert!((v - 0.5).abs() < 2.0 / 16.0, "{v}");
    }

    #[test]
    fn disjoint_categories_pay_two_penalties() {
        let a = Layout::new("a", vec![el(0.0, 0.0, 0.5, 0.5, 0)]);
        let b = Layout::new("b", vec![el(0.0, 0.0, 0.5, 0.5, 1)]);
        let v = docemd(&a, &b, 32).unwrap();
        assert!((v.value - 2.0 * SQRT_2).abs() < 1e-12);
        assert_eq!(v.meta["unmatched_categories"], 2);
    }

    #[test]
    fn coarse_grid_is_degenerate() {
        let a = Layout::new("a", vec![el(0.0, 0.0, 0.01, 0.01, 3)]);
        let err = docemd(&a, &a, 32).unwrap_err();
        assert!(matches!(
            err,
            Error::DegenerateSampling {
                category: 3,
                grid: 32,
                ..
            }
        ));
    }
}
