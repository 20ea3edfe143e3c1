//! Scores two hand-written layouts with LTSim and prints the soft element
//! alignment found by the optimal transport plan.
//!
//! Run with `cargo run --example ltsim_pair`.

use layout_metrics::measures::{ltsim, ltsim_plan};
use layout_metrics::model::{BBox, Category, Element, Layout};

fn main() -> layout_metrics::Result<()> {
    let (title, text, image) = (Category(0), Category(1), Category(2));
    let a = Layout::new(
        "poster-a",
        vec![
            Element::new(BBox::new(0.1, 0.05, 0.8, 0.15), title),
            Element::new(BBox::new(0.1, 0.25, 0.8, 0.4), image),
            Element::new(BBox::new(0.1, 0.7, 0.8, 0.2), text),
        ],
    );
    // same structure, but the image is shorter and two text blocks replace one
    let b = Layout::new(
        "poster-b",
        vec![
            Element::new(BBox::new(0.1, 0.05, 0.8, 0.15), title),
            Element::new(BBox::new(0.1, 0.25, 0.8, 0.3), image),
            Element::new(BBox::new(0.1, 0.6, 0.8, 0.15), text),
            Element::new(BBox::new(0.1, 0.8, 0.8, 0.15), text),
        ],
    );

    for sigma in [0.5, 1.0, 2.0] {
        let v = ltsim(&a, &b, sigma)?;
        println!("sigma {sigma}: LTSim {:.6} (EMD {})", v.value, v.meta["emd"]);
    }

    let plan = ltsim_plan(&a, &b)?;
    println!("transport plan ({} x {}):", plan.rows(), plan.cols());
    for i in 0..plan.rows() {
        let row: Vec<String> = (0..plan.cols()).map(|j| format!("{:.4}", plan.get(i, j))).collect();
        println!("  {}", row.join("  "));
    }
    Ok(())
}
