//! Layout data model: boxes, elements, layouts and collections.
//!
//! Boxes are `[left, top, width, height]` in canvas-normalized coordinates.

mod io;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{
    load_collection, load_collection_inferred, load_pairs, load_vocabulary, parse_collection,
    parse_collection_inferred, parse_pairs, save_collection, write_collection, LayoutPair,
};

/// Slack allowed on the right/bottom canvas edge at ingestion.
pub const CANVAS_SLACK: f64 = 1e-9;

/// Layouts with more elements than this trigger an ingestion warning.
pub const DEFAULT_ELEMENT_CAP: usize = 25;

/// Axis-aligned box in normalized canvas coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct BBox {
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

impl From<[f64; 4]> for BBox {
    fn from([left, top, width, height]: [f64; 4]) -> Self {
        BBox {
            left,
            top,
            width,
            height,
        }
    }
}

impl From<BBox> for [f64; 4] {
    fn from(b: BBox) -> Self {
        [b.left, b.top, b.width, b.height]
    }
}

impl BBox {
    pub const fn new(left: f64, top: f64, width: f64, height: f64) -> Self {
        BBox {
            left,
            top,
            width,
            height,
        }
    }

    #[inline]
    pub fn right(&self) -> f64 {
        self.left + self.width
    }

    #[inline]
    pub fn bottom(&self) -> f64 {
        self.top + self.height
    }

    #[inline]
    pub fn center(&self) -> (f64, f64) {
        (self.left + 0.5 * self.width, self.top + 0.5 * self.height)
    }

    /// Checks the structural box invariants: finite fields, non-negative
    /// size, origin inside the unit square.
    pub fn check(&self) -> std::result::Result<(), String> {
        let fields = [self.left, self.top, self.width, self.height];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(format!("non-finite coordinate in {fields:?}"));
        }
        if self.width < 0.0 || self.height < 0.0 {
            return Err(format!("negative size in {fields:?}"));
        }
        if !(0.0..=1.0).contains(&self.left) || !(0.0..=1.0).contains(&self.top) {
            return Err(format!("origin outside the canvas in {fields:?}"));
        }
        Ok(())
    }

    /// Structural check plus the ingestion rule that the box lies inside the canvas.
    pub fn check_in_canvas(&self) -> std::result::Result<(), String> {
        self.check()?;
        if self.right() > 1.0 + CANVAS_SLACK || self.bottom() > 1.0 + CANVAS_SLACK {
            return Err(format!(
                "box [{}, {}, {}, {}] extends outside the canvas",
                self.left, self.top, self.width, self.height
            ));
        }
        Ok(())
    }
}

/// Category id; an index into a [`Vocabulary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Category(pub u32);

impl Category {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub bbox: BBox,
    pub category: Category,
}

impl Element {
    pub const fn new(bbox: BBox, category: Category) -> Self {
        Element { bbox, category }
    }
}

/// An identified multiset of elements. Element order carries no meaning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub id: String,
    pub elements: Vec<Element>,
}

impl Layout {
    pub fn new(id: impl Into<String>, elements: Vec<Element>) -> Self {
        Layout {
            id: id.into(),
            elements,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub(crate) fn ensure_non_empty(&self) -> Result<()> {
        if self.elements.is_empty() {
            Err(Error::EmptyLayout(self.id.clone()))
        } else {
            Ok(())
        }
    }

    pub fn label_multiset(&self) -> LabelMultiset {
        label_multiset(self)
    }

    /// Distinct categories in ascending id order.
    pub fn categories(&self) -> Vec<Category> {
        let mut cats: Vec<Category> = self.elements.iter().map(|e| e.category).collect();
        cats.sort_unstable();
        cats.dedup();
        cats
    }
}

/// Category names; the position of a name is its category id.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vocabulary(pub Vec<String>);

impl Vocabulary {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Vocabulary(names.into_iter().map(Into::into).collect())
    }

    /// Placeholder names `"0"`, `"1"`, ... for `size` categories.
    pub fn numbered(size: usize) -> Self {
        Vocabulary((0..size).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, category: Category) -> Option<&str> {
        self.0.get(category.index()).map(String::as_str)
    }

    pub fn contains(&self, category: Category) -> bool {
        category.index() < self.0.len()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayoutCollection {
    pub layouts: Vec<Layout>,
    pub vocabulary: Vocabulary,
}

impl LayoutCollection {
    /// Builds a collection and checks every invariant ingestion would check.
    pub fn new(layouts: Vec<Layout>, vocabulary: Vocabulary) -> Result<Self> {
        let collection = LayoutCollection { layouts, vocabulary };
        collection.validate()?;
        Ok(collection)
    }

    pub fn len(&self) -> usize {
        self.layouts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layouts.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Layout> {
        self.layouts.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Layout> {
        self.layouts.iter().find(|l| l.id == id)
    }

    /// Same vocabulary, a chosen subset of layouts (in the given order).
    pub fn select(&self, indices: &[usize]) -> LayoutCollection {
        LayoutCollection {
            layouts: indices.iter().map(|&i| self.layouts[i].clone()).collect(),
            vocabulary: self.vocabulary.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::with_capacity(self.layouts.len());
        for layout in &self.layouts {
            validate_layout(layout, &self.vocabulary)?;
            if !seen.insert(layout.id.as_str()) {
                return Err(Error::Validation {
                    layout: layout.id.clone(),
                    message: "duplicate layout id".into(),
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn validate_layout(layout: &Layout, vocabulary: &Vocabulary) -> Result<()> {
    let fail = |message: String| Error::Validation {
        layout: layout.id.clone(),
        message,
    };
    if layout.elements.is_empty() {
        return Err(fail("empty layout".into()));
    }
    for (k, element) in layout.elements.iter().enumerate() {
        element
            .bbox
            .check_in_canvas()
            .map_err(|m| fail(format!("element {k}: {m}")))?;
        if !vocabulary.contains(element.category) {
            return Err(fail(format!(
                "element {k}: unknown category id {} (vocabulary has {})",
                element.category.0,
                vocabulary.len()
            )));
        }
    }
    Ok(())
}

/// Occurrence count per category.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabelMultiset {
    counts: BTreeMap<Category, usize>,
}

impl LabelMultiset {
    pub fn count(&self, category: Category) -> usize {
        self.counts.get(&category).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Category, usize)> + '_ {
        self.counts.iter().map(|(&c, &n)| (c, n))
    }
}

impl FromIterator<Category> for LabelMultiset {
    fn from_iter<I: IntoIterator<Item = Category>>(iter: I) -> Self {
        let mut counts = BTreeMap::new();
        for c in iter {
            *counts.entry(c).or_insert(0) += 1;
        }
        LabelMultiset { counts }
    }
}

pub fn label_multiset(layout: &Layout) -> LabelMultiset {
    layout.elements.iter().map(|e| e.category).collect()
}
