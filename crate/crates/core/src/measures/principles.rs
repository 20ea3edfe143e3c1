use crate::error::Result;
use crate::geometry::{area, intersection_area};
use crate::model::{BBox, Layout};

/// Largest alignment gap fed to `-log(1 - d)`.
const MAX_GAP: f64 = 1.0 - 1e-12;

/// Mean over elements of the fraction of each element's area covered by the
/// other elements, summed pairwise. Zero-area elements contribute 0.
pub fn overlap(l: &Layout) -> Result<f64> {
    l.ensure_non_empty()?;
    let n = l.len();
    let mut total = 0.0;
    for (i, ei) in l.elements.iter().enumerate() {
        let ai = area(&ei.bbox);
        if ai <= 0.0 {
            continue;
        }
        for (j, ej) in l.elements.iter().enumerate() {
            if i != j {
                total += intersection_area(&ei.bbox, &ej.bbox) / ai;
            }
        }
    }
    Ok(total / n as f64)
}

fn anchors(b: &BBox) -> [f64; 6] {
    let (cx, cy) = b.center();
    [b.left, cx, b.right(), b.top, cy, b.bottom()]
}

/// Mean of `-log(1 - d_i)`, where `d_i` is the smallest gap between element
/// `i` and any other element over the left, horizontal center, right, top,
/// vertical center and bottom coordinates. Lower is better aligned.
pub fn alignment(l: &Layout) -> Result<f64> {
    l.ensure_non_empty()?;
    let n = l.len();
    if n == 1 {
        return Ok(0.0);
    }
    let points: Vec<[f64; 6]> = l.elements.iter().map(|e| anchors(&e.bbox)).collect();
    let total: f64 = points
        .iter()
        .enumerate()
        .map(|(i, pi)| {
            let d = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .flat_map(|(_, pj)| pi.iter().zip(pj).map(|(a, b)| (a - b).abs()))
                .fold(f64::INFINITY, f64::min);
            -(-d.clamp(0.0, MAX_GAP)).ln_1p()
        })
        .sum();
    Ok(total / n as f64)
}
