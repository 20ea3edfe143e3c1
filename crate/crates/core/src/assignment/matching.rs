use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use super::WeightMatrix;
use crate::error::{Error, Result};

/// A set of disjoint `(row, col)` pairs, sorted by row.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: f64,
}

impl Matching {
    pub fn cardinality(&self) -> usize {
        self.pairs.len()
    }

    /// Fails with [`Error::Infeasible`] unless at least `required` pairs are matched.
    pub fn require_cardinality(self, required: usize) -> Result<Self> {
        if self.pairs.len() < required {
            Err(Error::Infeasible {
                required,
                found: self.pairs.len(),
            })
        } else {
            Ok(self)
        }
    }
}

/// Cost with an integral priority part compared before the float part.
/// The matching problem minimizes `(-cardinality, -weight)` lexicographically.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Lex {
    major: i64,
    minor: f64,
}

impl Lex {
    const ZERO: Lex = Lex { major: 0, minor: 0.0 };
    const FORBIDDEN: Lex = Lex {
        major: 1 << 40,
        minor: 0.0,
    };
    const INF: Lex = Lex {
        major: 1 << 52,
        minor: 0.0,
    };
}

impl PartialOrd for Lex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.major.cmp(&other.major) {
            Ordering::Equal => self.minor.partial_cmp(&other.minor),
            ord => Some(ord),
        }
    }
}

impl Add for Lex {
    type Output = Lex;
    fn add(self, rhs: Lex) -> Lex {
        Lex {
            major: self.major + rhs.major,
            minor: self.minor + rhs.minor,
        }
    }
}

impl Sub for Lex {
    type Output = Lex;
    fn sub(self, rhs: Lex) -> Lex {
        Lex {
            major: self.major - rhs.major,
            minor: self.minor - rhs.minor,
        }
    }
}

impl AddAssign for Lex {
    fn add_assign(&mut self, rhs: Lex) {
        *self = *self + rhs;
    }
}

impl SubAssign for Lex {
    fn sub_assign(&mut self, rhs: Lex) {
        *self = *self - rhs;
    }
}

/// Square `(m + n) x (m + n)` extension of a rectangular matching problem.
///
/// Rows `m..m+n` and columns `n..n+m` are placeholders: real row `i` may take
/// placeholder column `n + i` (row left unmatched), and placeholder row
/// `m + j` may take real column `j` (column left unmatched).
struct Padded<'a> {
    w: &'a WeightMatrix,
    m: usize,
    n: usize,
}

impl Padded<'_> {
    fn size(&self) -> usize {
        self.m + self.n
    }

    #[inline]
    fn cost(&self, i: usize, j: usize) -> Lex {
        let (m, n) = (self.m, self.n);
        match (i < m, j < n) {
            (true, true) => {
                if self.w.is_forbidden(i, j) {
                    Lex::FORBIDDEN
                } else {
                    Lex {
                        major: -1,
                        minor: -self.w.get(i, j),
                    }
                }
            }
            (true, false) if j - n == i => Lex::ZERO,
            (false, true) if i - m == j => Lex::ZERO,
            (false, false) => Lex::ZERO,
            _ => Lex::FORBIDDEN,
        }
    }
}

/// Shortest-augmenting-path Hungarian method on a square cost function.
/// Returns the row-to-column assignment together with dual potentials that
/// satisfy `cost(i, j) - u[i] - v[j] >= 0`, with equality on assigned pairs.
fn hungarian(size: usize, cost: impl Fn(usize, usize) -> Lex) -> (Vec<usize>, Vec<Lex>, Vec<Lex>) {
    // 1-based indices; column 0 is the virtual start of each phase.
    let mut u = vec![Lex::ZERO; size + 1];
    let mut v = vec![Lex::ZERO; size + 1];
    let mut col_row = vec![0usize; size + 1];
    let mut way = vec![0usize; size + 1];
    let mut minv = vec![Lex::INF; size + 1];
    let mut used = vec![false; size + 1];

    for i in 1..=size {
        col_row[0] = i;
        let mut j0 = 0usize;
        minv.fill(Lex::INF);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = col_row[j0];
            let mut delta = Lex::INF;
            let mut j1 = 0usize;
            for j in 1..=size {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=size {
                if used[j] {
                    u[col_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_col = vec![0usize; size];
    for j in 1..=size {
        row_col[col_row[j] - 1] = j - 1;
    }
    (row_col, u[1..].to_vec(), v[1..].to_vec())
}

/// Maximum-weight matching among the matchings of maximum cardinality that
/// avoid forbidden entries. Weights may be negative.
///
/// Ties are broken towards the lexicographically smallest row-sorted pair
/// list. Two totals within a few ulps of each other count as tied.
pub fn max_weight_matching(weights: &WeightMatrix) -> Matching {
    let (m, n) = (weights.rows(), weights.cols());
    let padded = Padded { w: weights, m, n };
    let size = padded.size();
    let (mut row_col, u, v) = hungarian(size, |i, j| padded.cost(i, j));

    let scale = weights
        .data()
        .iter()
        .enumerate()
        .filter(|&(k, _)| !weights.is_forbidden(k / n, k % n))
        .fold(1.0f64, |acc, (_, w)| acc.max(w.abs()));
    let eps = 64.0 * f64::EPSILON * size as f64 * scale;
    let tight = |i: usize, j: usize| {
        let r = padded.cost(i, j) - u[i] - v[j];
        r.major == 0 && r.minor.abs() <= eps
    };

    let mut col_row = vec![0usize; size];
    for (i, &j) in row_col.iter().enumerate() {
        col_row[j] = i;
    }

    // Every perfect matching on tight edges is optimal; walk the real rows in
    // order and pin each to the smallest column that still extends to one.
    let mut fixed_row = vec![false; size];
    let mut fixed_col = vec![false; size];
    let mut search = RerouteScratch::new(size);
    for r in 0..m {
        let current = row_col[r];
        let candidates = (0..n).chain(std::iter::once(n + r));
        for c in candidates {
            if fixed_col[c] {
                continue;
            }
            if c == current {
                break;
            }
            if !tight(r, c) {
                continue;
            }
            if search.reroute(r, c, &mut row_col, &mut col_row, &fixed_row, &fixed_col, &tight) {
                break;
            }
        }
        fixed_row[r] = true;
        fixed_col[row_col[r]] = true;
    }

    let mut pairs = Vec::new();
    let mut total_weight = 0.0;
    for (r, &c) in row_col.iter().enumerate().take(m) {
        if c < n {
            pairs.push((r, c));
            total_weight += weights.get(r, c);
        }
    }
    Matching { pairs, total_weight }
}

struct RerouteScratch {
    prev_row: Vec<usize>,
    seen_col: Vec<bool>,
    queue: Vec<usize>,
}

impl RerouteScratch {
    fn new(size: usize) -> Self {
        RerouteScratch {
            prev_row: vec![usize::MAX; size],
            seen_col: vec![false; size],
            queue: Vec::with_capacity(size),
        }
    }

    /// Tries to move row `r` onto column `c` by rotating an alternating cycle
    /// of tight edges that avoids pinned rows and columns.
    #[allow(clippy::too_many_arguments)]
    fn reroute(
        &mut self,
        r: usize,
        c: usize,
        row_col: &mut [usize],
        col_row: &mut [usize],
        fixed_row: &[bool],
        fixed_col: &[bool],
        tight: &impl Fn(usize, usize) -> bool,
    ) -> bool {
        let size = row_col.len();
        let start = col_row[c];
        let goal = row_col[r];
        debug_assert!(!fixed_row[start]);
        self.seen_col.fill(false);
        self.queue.clear();
        self.queue.push(start);
        let mut head = 0;
        let mut found = false;
        'bfs: while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for y in 0..size {
                if y == c || fixed_col[y] || self.seen_col[y] || y == row_col[x] || !tight(x, y) {
                    continue;
                }
                self.seen_col[y] = true;
                self.prev_row[y] = x;
                if y == goal {
                    found = true;
                    break 'bfs;
                }
                let next = col_row[y];
                debug_assert!(next != r && !fixed_row[next]);
                self.queue.push(next);
            }
        }
        if !found {
            return false;
        }
        let mut y = goal;
        loop {
            let x = self.prev_row[y];
            let old = row_col[x];
            row_col[x] = y;
            col_row[y] = x;
            if x == start {
                break;
            }
            y = old;
        }
        row_col[r] = c;
        col_row[c] = r;
        true
    }
}
