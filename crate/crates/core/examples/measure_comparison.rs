//! Evaluates every layout-level measure on the same pair, including one whose
//! label multisets differ so that Max.IoU is undefined.

use layout_metrics::measures::{evaluate, MeasureKind, MeasureParams};
use layout_metrics::model::{BBox, Category, Element, Layout};

fn main() {
    let a = Layout::new(
        "a",
        vec![
            Element::new(BBox::new(0.05, 0.05, 0.9, 0.2), Category(0)),
            Element::new(BBox::new(0.05, 0.3, 0.4, 0.6), Category(1)),
            Element::new(BBox::new(0.55, 0.3, 0.4, 0.6), Category(2)),
        ],
    );
    let shifted = Layout::new(
        "shifted",
        a.elements
            .iter()
            .map(|e| {
                Element::new(
                    BBox {
                        top: e.bbox.top * 0.9,
                        ..e.bbox
                    },
                    e.category,
                )
            })
            .collect(),
    );
    let mut relabeled = a.clone();
    relabeled.id = "relabeled".into();
    relabeled.elements[2].category = Category(1);

    let params = MeasureParams::default();
    for other in [&shifted, &relabeled] {
        println!("a vs {}:", other.id);
        for kind in MeasureKind::ALL {
            match evaluate(kind, &a, other, &params) {
                Ok(v) => println!("  {:<12} {:.6}", kind.name(), v.value),
                Err(e) => println!("  {:<12} undefined ({e})", kind.name()),
            }
        }
    }
}
