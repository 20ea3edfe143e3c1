use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{evaluate, MeasureKind, MeasureParams};
use crate::model::{Layout, LayoutCollection};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedItem {
    pub id: String,
    /// Higher is more similar; dissimilarities are negated.
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedList {
    pub measure: MeasureKind,
    pub items: Vec<RankedItem>,
    /// Layouts for which the measure is undefined against the query.
    pub skipped: usize,
}

fn rank_order(x: &RankedItem, y: &RankedItem) -> Ordering {
    y.score.total_cmp(&x.score).then_with(|| x.id.cmp(&y.id))
}

/// The `k` layouts of `c` most similar to `query`, best first, ties broken
/// by ascending id. Layouts the measure cannot score against the query
/// (for instance Max.IoU across different label multisets) are skipped and
/// counted; the list may then hold fewer than `k` items.
pub fn retrieve(
    query: &Layout,
    c: &LayoutCollection,
    measure: MeasureKind,
    k: usize,
    params: &MeasureParams,
) -> Result<RankedList> {
    if k == 0 || k > c.len() {
        return Err(Error::InvalidArgument(format!(
            "k must lie in 1..={}, got {k}",
            c.len()
        )));
    }
    query.ensure_non_empty()?;
    let scored: Vec<Option<RankedItem>> = c
        .layouts
        .par_iter()
        .map(|l| match evaluate(measure, query, l, params) {
            Ok(v) => Ok(Some(RankedItem {
                id: l.id.clone(),
                score: measure.oriented(v.value),
            })),
            Err(Error::MultisetMismatch { .. } | Error::DegenerateSampling { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let skipped = scored.iter().filter(|s| s.is_none()).count();
    let mut items: Vec<RankedItem> = scored.into_iter().flatten().collect();
    items.sort_by(rank_order);
    items.truncate(k);
    Ok(RankedList {
        measure,
        items,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BBox, Category, Element, Vocabulary};

    fn single(id: &str, b: [f64; 4], c: u32) -> Layout {
        Layout::new(id, vec![Element::new(BBox::new(b[0], b[1], b[2], b[3]), Category(c))])
    }

    fn corpus() -> LayoutCollection {
        LayoutCollection::new(
            vec![
                // EMD to the query [0, 0, 0.5, 1] of category 0 in the comments
                single("far", [0.5, 0.0, 0.5, 1.0], 1),  // relabel + shift: 0.75
                single("near", [0.5, 0.0, 0.5, 1.0], 0), // shift: 0.25
                single("mid", [0.0, 0.0, 0.5, 1.0], 1),  // relabel: 0.5
                single("self", [0.5, 0.0, 0.5, 1.0], 0),
            ],
            Vocabulary::numbered(2),
        )
        .unwrap()
    }

    #[test]
    fn self_hit_first() {
        let c = corpus();
        let query = c.get("self").unwrap();
        let r = retrieve(query, &c, MeasureKind::Ltsim, 1, &MeasureParams::default()).unwrap();
        // "near" is the same layout as "self" under another id; ids break the tie
        assert_eq!(r.items[0].score, 1.0);
        assert_eq!(r.items[0].id, "near");
        let r = retrieve(
            query,
            &c.select(&[0, 2, 3]),
            MeasureKind::Ltsim,
            1,
            &MeasureParams::default(),
        )
        .unwrap();
        assert_eq!(r.items[0].id, "self");
    }

    #[test]
    fn dissimilarity_orders_by_ascending_emd() {
        let c = corpus().select(&[0, 1, 2]);
        let query = single("q", [0.0, 0.0, 0.5, 1.0], 0);
        let r = retrieve(&query, &c, MeasureKind::LtsimEmd, 3, &MeasureParams::default()).unwrap();
        let ids: Vec<&str> = r.items.iter().map(|i| i.id.as_str()).collect();
        assert_eq!(ids, vec!["near", "mid", "far"]);
        assert!((r.items[0].score + 0.25).abs() < 1e-12);
        assert!((r.items[2].score + 0.75).abs() < 1e-12);
    }

    #[test]
    fn incomparable_layouts_are_skipped() {
        let c = corpus();
        let query = single("q", [0.0, 0.0, 0.5, 0.5], 0);
        let query2 = Layout::new("q2", vec![query.elements[0], query.elements[0]]);
        let r = retrieve(&query2, &c, MeasureKind::MaxiouBeta, 2, &MeasureParams::default()).unwrap();
        assert!(r.items.is_empty());
        assert_eq!(r.skipped, 4);
        let r = retrieve(&query, &c, MeasureKind::MaxiouBeta, 4, &MeasureParams::default()).unwrap();
        assert_eq!(r.items.len(), 2);
        assert_eq!(r.skipped, 2);
    }

    #[test]
    fn k_must_fit() {
        let c = corpus();
        let q = c.get("self").unwrap();
        assert!(retrieve(q, &c, MeasureKind::Ltsim, 0, &MeasureParams::default()).is_err());
        assert!(retrieve(q, &c, MeasureKind::Ltsim, 5, &MeasureParams::default()).is_err());
    }
}
