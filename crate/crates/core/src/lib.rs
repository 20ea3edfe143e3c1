//! Similarity measures for graphic layouts (sets of labeled bounding boxes
//! on a unit canvas).
//!
//! The core measure is LTSim, an optimal-transport similarity between two
//! layouts, and its collection-level extension LTSim-MMD. Reference
//! implementations of DocSim, Max.IoU, MeanIoU, DocEMD and the overlap and
//! alignment principle scores sit alongside, together with the perturbation,
//! retrieval and rank-correlation procedures used to compare them.
//!
//! ```
//! use layout_metrics::measures::ltsim;
//! use layout_metrics::model::{BBox, Category, Element, Layout};
//!
//! let a = Layout::new("a", vec![Element::new(BBox::new(0.0, 0.0, 0.5, 1.0), Category(0))]);
//! let b = Layout::new("b", vec![Element::new(BBox::new(0.5, 0.0, 0.5, 1.0), Category(0))]);
//! let s = ltsim(&a, &b, 1.0).unwrap();
//! assert!((s.value - (-0.25f64).exp()).abs() < 1e-12);
//! ```

pub mod assignment;
pub mod cli;
pub mod collection;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod measures;
pub mod model;

pub use error::{Error, Result};
