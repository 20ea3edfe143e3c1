use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{BBox, Category, Element, Layout, LayoutCollection, Vocabulary};

/// Parameters of the seeded random layout generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub layouts: usize,
    pub min_elements: usize,
    pub max_elements: usize,
    pub categories: usize,
    pub min_size: f64,
    pub max_size: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            layouts: 200,
            min_elements: 3,
            max_elements: 10,
            categories: 5,
            min_size: 0.05,
            max_size: 0.5,
            seed: 0,
        }
    }
}

/// Random layouts with uniformly drawn element counts, categories and box
/// sizes. As in real designs, where a category tends to occupy a typical
/// region, the canvas is cut into one horizontal band per category and each
/// box is vertically centered at a uniform point of its category's band
/// (then clamped onto the canvas). Horizontal position is uniform.
/// Layout ids are `syn-<index>`.
pub fn synthetic_collection(cfg: &SyntheticConfig) -> LayoutCollection {
    assert!(cfg.min_elements >= 1 && cfg.min_elements <= cfg.max_elements);
    assert!(cfg.categories >= 1);
    assert!(0.0 < cfg.min_size && cfg.min_size <= cfg.max_size && cfg.max_size <= 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let layouts = (0..cfg.layouts)
        .map(|k| {
            let n = rng.gen_range(cfg.min_elements..=cfg.max_elements);
            let elements = (0..n)
                .map(|_| {
                    let c = rng.gen_range(0..cfg.categories as u32);
                    let w = rng.gen_range(cfg.min_size..=cfg.max_size);
                    let h = rng.gen_range(cfg.min_size..=cfg.max_size);
                    let left = rng.gen_range(0.0..=1.0 - w);
                    let center = (c as f64 + rng.gen::<f64>()) / cfg.categories as f64;
                    let top = (center - h / 2.0).clamp(0.0, 1.0 - h);
                    Element::new(BBox::new(left, top, w, h), Category(c))
                })
                .collect();
            Layout::new(format!("syn-{k}"), elements)
        })
        .collect();
    LayoutCollection {
        layouts,
        vocabulary: Vocabulary::numbered(cfg.categories),
    }
}
