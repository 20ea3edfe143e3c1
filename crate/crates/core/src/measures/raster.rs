//! Cell-center lattices on the unit canvas.
//!
//! Cell `k` of a lattice with `size` cells per side covers `[k/size, (k+1)/size)`
//! and is represented by its center `(k + 0.5) / size`. A box covers a cell when
//! the center lies in the half-open box `[left, right) x [top, bottom)`.

use crate::model::BBox;

#[inline]
pub(crate) fn center(k: usize, size: usize) -> f64 {
    (k as f64 + 0.5) / size as f64
}

/// Cells whose centers fall in `[lo, hi)`, as a half-open index range.
pub(crate) fn cell_range(lo: f64, hi: f64, size: usize) -> (usize, usize) {
    let first = |bound: f64| {
        // smallest k with center(k) >= bound; the estimate is refined exactly
        let mut k = (bound * size as f64 - 0.5).ceil().clamp(0.0, size as f64) as usize;
        while k > 0 && center(k - 1, size) >= bound {
            k -= 1;
        }
        while k < size && center(k, size) < bound {
            k += 1;
        }
        k
    };
    let (a, b) = (first(lo), first(hi));
    (a, b.max(a))
}

/// Boolean `size x size` mask stored as packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Mask {
    size: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Mask {
    pub(crate) fn new(size: usize) -> Self {
        let words_per_row = size.div_ceil(64);
        Mask {
            size,
            words_per_row,
            bits: vec![0; words_per_row * size],
        }
    }

    pub(crate) fn fill_box(&mut self, b: &BBox) {
        let (r0, r1) = cell_range(b.top, b.bottom(), self.size);
        let (c0, c1) = cell_range(b.left, b.right(), self.size);
        if c0 == c1 {
            return;
        }
        for r in r0..r1 {
            let row = &mut self.bits[r * self.words_per_row..(r + 1) * self.words_per_row];
            for (w, word) in row.iter_mut().enumerate() {
                let lo = c0.max(w * 64);
                let hi = c1.min((w + 1) * 64);
                if lo < hi {
                    let width = hi - lo;
                    let run = if width == 64 {
                        u64::MAX
                    } else {
                        ((1u64 << width) - 1) << (lo - w * 64)
                    };
                    *word |= run;
                }
            }
        }
    }

    pub(crate) fn count(&self) -> u64 {
        self.bits.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// `(|self & other|, |self | other|)`.
    pub(crate) fn overlap_counts(&self, other: &Mask) -> (u64, u64) {
        debug_assert_eq!(self.size, other.size);
        self.bits.iter().zip(&other.bits).fold((0, 0), |(i, u), (a, b)| {
            (i + u64::from((a & b).count_ones()), u + u64::from((a | b).count_ones()))
        })
    }

    /// Set cells as `(column, row)` pairs in row-major order.
    pub(crate) fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |r| {
            (0..self.size).filter_map(move |c| {
                let word = self.bits[r * self.words_per_row + c / 64];
                (word >> (c % 64) & 1 == 1).then_some((c, r))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_follow_the_center_rule() {
        assert_eq!(cell_range(0.0, 1.0, 4), (0, 4));
        assert_eq!(cell_range(0.0, 0.5, 4), (0, 2));
        // centers at 0.125, 0.375, ...; a box ending exactly on a center excludes it
        assert_eq!(cell_range(0.125, 0.375, 4), (0, 1));
        assert_eq!(cell_range(0.2, 0.3, 4), (1, 1));
        assert_eq!(cell_range(0.8, 1.0, 4), (3, 4));
        assert_eq!(cell_range(0.9, 1.0, 4), (4, 4));
    }

    #[test]
    fn mask_counts_and_cells() {
        let mut m = Mask::new(100);
        m.fill_box(&BBox::new(0.0, 0.0, 0.5, 0.25));
        assert_eq!(m.count(), 50 * 25);
        let mut full = Mask::new(100);
        full.fill_box(&BBox::new(0.0, 0.0, 1.0, 1.0));
        assert_eq!(full.count(), 10_000);
        assert_eq!(m.overlap_counts(&full), (1250, 10_000));
        let cells: Vec<_> = m.cells().take(2).collect();
        assert_eq!(cells, vec![(0, 0), (1, 0)]);
        assert_eq!(m.cells().count(), 1250);
    }

    #[test]
    fn tiny_boxes_may_miss_every_center() {
        let mut m = Mask::new(32);
        m.fill_box(&BBox::new(0.0, 0.0, 0.01, 0.01));
        assert_eq!(m.count(), 0);
    }
}
