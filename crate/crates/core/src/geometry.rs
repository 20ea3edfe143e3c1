//! Scalar functions on box pairs.
//!
//! Overlap quantities are computed from box edges (`left`, `left + width`, ...)
//! so that a box compared with itself yields IoU and GIoU of exactly 1.

use crate::model::BBox;

/// `width * height`.
#[inline]
pub fn area(b: &BBox) -> f64 {
    b.width * b.height
}

#[inline]
fn edge_area(b: &BBox) -> f64 {
    (b.right() - b.left) * (b.bottom() - b.top)
}

/// Area of the intersection rectangle; 0 for disjoint or edge-touching boxes.
#[inline]
pub fn intersection_area(b1: &BBox, b2: &BBox) -> f64 {
    let w = b1.right().min(b2.right()) - b1.left.max(b2.left);
    let h = b1.bottom().min(b2.bottom()) - b1.top.max(b2.top);
    if w <= 0.0 || h <= 0.0 {
        0.0
    } else {
        w * h
    }
}

#[inline]
fn overlap_terms(b1: &BBox, b2: &BBox) -> (f64, f64) {
    let inter = intersection_area(b1, b2);
    let union = edge_area(b1) + edge_area(b2) - inter;
    (inter, union)
}

/// Intersection over union. Two zero-area boxes give 0.
pub fn iou(b1: &BBox, b2: &BBox) -> f64 {
    let (inter, union) = overlap_terms(b1, b2);
    if union <= 0.0 {
        0.0
    } else {
        inter / union
    }
}

/// Generalized IoU in `[-1, 1]`: IoU minus the fraction of the smallest
/// enclosing box not covered by the union.
///
/// When the enclosing box itself has zero area (coincident degenerate boxes)
/// the ratio is 0/0 and this returns 0.
pub fn giou(b1: &BBox, b2: &BBox) -> f64 {
    let (inter, union) = overlap_terms(b1, b2);
    let enclosing =
        (b1.right().max(b2.right()) - b1.left.min(b2.left)) * (b1.bottom().max(b2.bottom()) - b1.top.min(b2.top));
    if enclosing <= 0.0 {
        return 0.0;
    }
    let iou = if union <= 0.0 { 0.0 } else { inter / union };
    iou - (enclosing - union) / enclosing
}

/// Positional similarity `(1 + GIoU) / 2`, in `[0, 1]`.
#[inline]
pub fn delta_bbox(b1: &BBox, b2: &BBox) -> f64 {
    (1.0 + giou(b1, b2)) / 2.0
}

/// Euclidean distance between box centers, in normalized canvas units.
pub fn center_distance(b1: &BBox, b2: &BBox) -> f64 {
    let (x1, y1) = b1.center();
    let (x2, y2) = b2.center();
    (x1 - x2).hypot(y1 - y2)
}

/// L1 difference of the box sizes: `|w1 - w2| + |h1 - h2|`.
pub fn shape_difference(b1: &BBox, b2: &BBox) -> f64 {
    (b1.width - b2.width).abs() + (b1.height - b2.height).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn b(l: f64, t: f64, w: f64, h: f64) -> BBox {
        BBox::new(l, t, w, h)
    }

    #[test]
    fn area_examples() {
        assert_eq!(area(&b(0.0, 0.0, 1.0, 1.0)), 1.0);
        assert!((area(&b(0.2, 0.2, 0.4, 0.4)) - 0.16).abs() < TOL);
        assert_eq!(area(&b(0.0, 0.0, 0.0, 0.5)), 0.0);
    }

    #[test]
    fn iou_examples() {
        let x = b(0.13, 0.27, 0.31, 0.42);
        assert_eq!(iou(&x, &x), 1.0);
        assert_eq!(iou(&b(0.0, 0.0, 0.5, 1.0), &b(0.5, 0.0, 0.5, 1.0)), 0.0);
        let v = iou(&b(0.0, 0.0, 0.5, 0.5), &b(0.25, 0.25, 0.5, 0.5));
        assert!((v - 0.0625 / 0.4375).abs() < TOL, "{v}");
        assert_eq!(iou(&b(0.2, 0.2, 0.0, 0.0), &b(0.2, 0.2, 0.0, 0.0)), 0.0);
    }

    #[test]
    fn giou_examples() {
        let x = b(0.13, 0.27, 0.31, 0.42);
        assert_eq!(giou(&x, &x), 1.0);
        assert!(giou(&b(0.0, 0.0, 0.5, 1.0), &b(0.5, 0.0, 0.5, 1.0)).abs() < TOL);
        let far = giou(&b(0.0, 0.0, 0.1, 0.1), &b(0.9, 0.9, 0.1, 0.1));
        assert!((far + 0.98).abs() < TOL, "{far}");
        // coincident zero-area boxes
        assert_eq!(giou(&b(0.3, 0.3, 0.0, 0.0), &b(0.3, 0.3, 0.0, 0.0)), 0.0);
        // containment: GIoU equals IoU
        let outer = b(0.0, 0.0, 1.0, 1.0);
        let inner = b(0.25, 0.25, 0.5, 0.5);
        assert!((giou(&outer, &inner) - iou(&outer, &inner)).abs() < TOL);
    }

    #[test]
    fn delta_bbox_examples() {
        let x = b(0.4, 0.1, 0.2, 0.7);
        assert_eq!(delta_bbox(&x, &x), 1.0);
        assert!((delta_bbox(&b(0.0, 0.0, 0.5, 1.0), &b(0.5, 0.0, 0.5, 1.0)) - 0.5).abs() < TOL);
        assert!((delta_bbox(&b(0.0, 0.0, 0.1, 0.1), &b(0.9, 0.9, 0.1, 0.1)) - 0.01).abs() < TOL);
    }

    #[test]
    fn center_distance_examples() {
        let x = b(0.1, 0.1, 0.3, 0.3);
        assert_eq!(center_distance(&x, &x), 0.0);
        assert!((center_distance(&b(0.0, 0.0, 0.5, 1.0), &b(0.5, 0.0, 0.5, 1.0)) - 0.5).abs() < TOL);
        let d = center_distance(&b(0.0, 0.0, 0.2, 0.2), &b(0.8, 0.8, 0.2, 0.2));
        assert!((d - 1.131370849898476).abs() < TOL, "{d}");
    }

    #[test]
    fn shape_difference_examples() {
        let x = b(0.1, 0.1, 0.3, 0.3);
        assert_eq!(shape_difference(&x, &x), 0.0);
        assert!((shape_difference(&b(0.0, 0.0, 0.5, 0.5), &b(0.2, 0.4, 0.3, 0.2)) - 0.5).abs() < TOL);
        assert_eq!(shape_difference(&b(0.0, 0.0, 0.3, 0.2), &b(0.6, 0.7, 0.3, 0.2)), 0.0);
    }

    #[test]
    fn giou_non_increasing_with_separation() {
        let fixed = b(0.1, 0.3, 0.2, 0.2);
        let mut prev = f64::INFINITY;
        for k in 0..=60 {
            let dx = k as f64 * 0.01;
            let moving = b(0.1 + dx, 0.3, 0.2, 0.2);
            let g = giou(&fixed, &moving);
            assert!(g <= prev + TOL, "offset {dx}: {g} > {prev}");
            prev = g;
        }
    }

    fn arb_box() -> impl Strategy<Value = BBox> {
        (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64)
            .prop_map(|(l, t, fw, fh)| b(l, t, fw * (1.0 - l), fh * (1.0 - t)))
    }

    fn arb_solid_box() -> impl Strategy<Value = BBox> {
        (0.0..0.9f64, 0.0..0.9f64, 0.01..1.0f64, 0.01..1.0f64)
            .prop_map(|(l, t, fw, fh)| b(l, t, fw * (1.0 - l), fh * (1.0 - t)))
    }

    proptest! {
        #[test]
        fn symmetric_and_bounded(b1 in arb_box(), b2 in arb_box()) {
            let (i12, i21) = (iou(&b1, &b2), iou(&b2, &b1));
            let (g12, g21) = (giou(&b1, &b2), giou(&b2, &b1));
            prop_assert_eq!(i12, i21);
            prop_assert!((g12 - g21).abs() < TOL);
            prop_assert!((0.0..=1.0).contains(&i12));
            prop_assert!((-1.0..=1.0).contains(&g12));
            prop_assert!(g12 <= i12 + TOL);
            let d = delta_bbox(&b1, &b2);
            prop_assert!((0.0..=1.0).contains(&d));
            prop_assert_eq!(d, (1.0 + g12) / 2.0);
        }

        #[test]
        fn self_overlap_is_one(x in arb_solid_box()) {
            prop_assert_eq!(iou(&x, &x), 1.0);
            prop_assert_eq!(giou(&x, &x), 1.0);
        }

        #[test]
        fn giou_equals_iou_when_enclosing_is_union(outer in arb_solid_box(), s in 0.1..1.0f64, fx in 0.0..1.0f64, fy in 0.0..1.0f64) {
            // a box nested inside `outer`: enclosing box == union == outer
            let w = outer.width * s;
            let h = outer.height * s;
            let inner = b(outer.left + fx * (outer.width - w), outer.top + fy * (outer.height - h), w, h);
            prop_assert!((giou(&outer, &inner) - iou(&outer, &inner)).abs() < 1e-9);
        }
    }
}
