use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{Category, Element, Layout, LayoutCollection};

pub const DEFAULT_MAX_OFFSET: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbKind {
    /// Translate the box by a per-axis offset.
    Positional,
    /// Replace the category with a different one.
    Label,
}

impl FromStr for PerturbKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pos" | "positional" => Ok(PerturbKind::Positional),
            "label" => Ok(PerturbKind::Label),
            other => Err(Error::InvalidArgument(format!(
                "perturbation kind must be pos or label, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for PerturbKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            PerturbKind::Positional => "positional",
            PerturbKind::Label => "label",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbConfig {
    /// Probability that any one element is perturbed.
    pub rate: f64,
    pub kind: PerturbKind,
    /// Largest per-axis translation, as a fraction of the canvas.
    pub max_offset: f64,
    pub seed: u64,
}

impl PerturbConfig {
    pub fn new(rate: f64, kind: PerturbKind, seed: u64) -> Self {
        PerturbConfig {
            rate,
            kind,
            max_offset: DEFAULT_MAX_OFFSET,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.rate) {
            return Err(Error::InvalidArgument(format!(
                "rate must lie in [0, 1], got {}",
                self.rate
            )));
        }
        if !(self.max_offset >= 0.0 && self.max_offset.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "max_offset must be finite and non-negative, got {}",
                self.max_offset
            )));
        }
        Ok(())
    }
}

/// The random stream of one element, keyed by seed, layout id and position.
fn element_rng(seed: u64, layout: &str, index: usize) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((layout.len() as u64).to_le_bytes());
    h.update(layout.as_bytes());
    h.update((index as u64).to_le_bytes());
    let key: [u8; 32] = h.finalize().into();
    ChaCha8Rng::from_seed(key)
}

fn shift(origin: f64, size: f64, offset: f64) -> f64 {
    (origin + offset).clamp(0.0, (1.0 - size).max(0.0))
}

fn perturb_element(e: &Element, cfg: &PerturbConfig, vocab_size: usize, rng: &mut ChaCha8Rng) -> Element {
    let mut out = *e;
    match cfg.kind {
        PerturbKind::Positional => {
            let r = cfg.max_offset;
            let (dx, dy) = if r > 0.0 {
                (rng.gen_range(-r..=r), rng.gen_range(-r..=r))
            } else {
                (0.0, 0.0)
            };
            out.bbox.left = shift(e.bbox.left, e.bbox.width, dx);
            out.bbox.top = shift(e.bbox.top, e.bbox.height, dy);
        }
        PerturbKind::Label => {
            let current = e.category.0;
            let mut pick = rng.gen_range(0..vocab_size as u32 - 1);
            if pick >= current {
                pick += 1;
            }
            out.category = Category(pick);
        }
    }
    out
}

/// Applies independent per-element noise.
///
/// Each element is selected with probability `rate`. Positional noise moves
/// the box by a uniform offset in `[-max_offset, max_offset]` on each axis,
/// clamped so the box stays on the canvas without resizing. Label noise draws
/// a new category uniformly among the other vocabulary entries. Unselected
/// elements are untouched, and an element's outcome depends only on the
/// seed, its layout id and its index.
pub fn perturb(c: &LayoutCollection, cfg: &PerturbConfig) -> Result<LayoutCollection> {
    cfg.validate()?;
    let vocab_size = c.vocabulary.len();
    if cfg.kind == PerturbKind::Label && vocab_size < 2 {
        return Err(Error::VocabularyTooSmall(vocab_size));
    }
    let layouts = c
        .iter()
        .map(|l| {
            let elements = l
                .elements
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let mut rng = element_rng(cfg.seed, &l.id, i);
                    if rng.gen::<f64>() < cfg.rate {
                        perturb_element(e, cfg, vocab_size, &mut rng)
                    } else {
                        *e
                    }
                })
                .collect();
            Layout::new(l.id.clone(), elements)
        })
        .collect();
    Ok(LayoutCollection {
        layouts,
        vocabulary: c.vocabulary.clone(),
    })
}
