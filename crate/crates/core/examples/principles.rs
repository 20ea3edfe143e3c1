//! Overlap and alignment scores for single layouts.

use layout_metrics::measures::{alignment, overlap};
use layout_metrics::model::{BBox, Category, Element, Layout};

fn main() -> layout_metrics::Result<()> {
    let tidy = Layout::new(
        "tidy",
        vec![
            Element::new(BBox::new(0.1, 0.1, 0.8, 0.2), Category(0)),
            Element::new(BBox::new(0.1, 0.4, 0.8, 0.5), Category(1)),
        ],
    );
    let messy = Layout::new(
        "messy",
        vec![
            Element::new(BBox::new(0.1, 0.1, 0.6, 0.4), Category(0)),
            Element::new(BBox::new(0.33, 0.27, 0.5, 0.5), Category(1)),
        ],
    );
    for l in [&tidy, &messy] {
        println!("{:<6} overlap {:.4}  alignment {:.4}", l.id, overlap(l)?, alignment(l)?);
    }
    Ok(())
}
