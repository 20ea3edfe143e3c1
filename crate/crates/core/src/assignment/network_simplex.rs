//! Primal network simplex for balanced bipartite transportation problems
//! with integral supplies and real arc costs.
//!
//! Follows the structure of LEMON's `NetworkSimplex`: an artificial root
//! joined to every node, a strongly feasible spanning tree (which rules out
//! cycling on the heavily degenerate uniform-marginal instances), and block
//! search pricing. The tree is re-derived from its arc set after every pivot,
//! which costs `O(nodes)` and keeps the bookkeeping simple.

const STATE_TREE: i8 = 0;
const STATE_LOWER: i8 = 1;

pub(crate) struct NetworkSimplex<'a> {
    m: usize,
    n: usize,
    cost: &'a [f64],
    art_cost: f64,
    eps: f64,
    flow: Vec<i64>,
    state: Vec<i8>,
    // spanning tree
    tree_arcs: Vec<usize>,
    parent: Vec<usize>,
    pred: Vec<usize>,
    pred_up: Vec<bool>,
    pred_slot: Vec<usize>,
    depth: Vec<u32>,
    pi: Vec<f64>,
    // scratch for tree rebuilds
    adj_start: Vec<usize>,
    adj: Vec<usize>,
    queue: Vec<usize>,
    block_size: usize,
    next_arc: usize,
}

impl<'a> NetworkSimplex<'a> {
    /// `cost` is row-major `m x n`; source `i` supplies `supply[i]`, sink `j`
    /// absorbs `demand[j]`, and both sides must sum to the same total.
    pub(crate) fn new(m: usize, n: usize, cost: &'a [f64], supply: &[i64], demand: &[i64]) -> Self {
        debug_assert_eq!(cost.len(), m * n);
        debug_assert_eq!(supply.iter().sum::<i64>(), demand.iter().sum::<i64>());
        let nodes = m + n;
        let arcs = m * n;
        let max_cost = cost.iter().fold(0.0f64, |a, &c| a.max(c.abs()));
        let art_cost = (max_cost + 1.0) * nodes as f64;

        let mut flow = vec![0i64; arcs + nodes];
        let mut state = vec![STATE_LOWER; arcs + nodes];
        for u in 0..nodes {
            let e = arcs + u;
            flow[e] = if u < m { supply[u] } else { demand[u - m] };
            state[e] = STATE_TREE;
        }

        let block_size = ((arcs as f64).sqrt().ceil() as usize).max(10);
        let mut ns = NetworkSimplex {
            m,
            n,
            cost,
            art_cost,
            eps: 1e-12 * art_cost,
            flow,
            state,
            tree_arcs: (arcs..arcs + nodes).collect(),
            parent: vec![0; nodes + 1],
            pred: vec![0; nodes + 1],
            pred_up: vec![false; nodes + 1],
            pred_slot: vec![0; nodes + 1],
            depth: vec![0; nodes + 1],
            pi: vec![0.0; nodes + 1],
            adj_start: vec![0; nodes + 2],
            adj: vec![0; 2 * nodes],
            queue: Vec::with_capacity(nodes + 1),
            block_size,
            next_arc: 0,
        };
        ns.rebuild_tree();
        ns
    }

    #[inline]
    fn root(&self) -> usize {
        self.m + self.n
    }

    /// Endpoints of arc `e`. Real arcs run source -> sink; artificial arcs run
    /// source -> root for sources and root -> sink for sinks.
    #[inline]
    fn endpoints(&self, e: usize) -> (usize, usize) {
        let arcs = self.m * self.n;
        if e < arcs {
            (e / self.n, self.m + e % self.n)
        } else {
            let u = e - arcs;
            if u < self.m {
                (u, self.root())
            } else {
                (self.root(), u)
            }
        }
    }

    #[inline]
    fn arc_cost(&self, e: usize) -> f64 {
        let arcs = self.m * self.n;
        if e < arcs {
            self.cost[e]
        } else if e - arcs < self.m {
            0.0
        } else {
            self.art_cost
        }
    }

    fn rebuild_tree(&mut self) {
        let root = self.root();
        let nodes = root + 1;
        self.adj_start.fill(0);
        for &e in &self.tree_arcs {
            let (s, t) = self.endpoints(e);
            self.adj_start[s + 1] += 1;
            self.adj_start[t + 1] += 1;
        }
        for k in 0..nodes {
            self.adj_start[k + 1] += self.adj_start[k];
        }
        let mut fill = self.adj_start.clone();
        for (slot, &e) in self.tree_arcs.iter().enumerate() {
            let (s, t) = self.endpoints(e);
            self.adj[fill[s]] = slot;
            fill[s] += 1;
            self.adj[fill[t]] = slot;
            fill[t] += 1;
        }

        self.queue.clear();
        self.queue.push(root);
        self.parent[root] = usize::MAX;
        self.depth[root] = 0;
        self.pi[root] = 0.0;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for k in self.adj_start[x]..self.adj_start[x + 1] {
                let slot = self.adj[k];
                if x != root && slot == self.pred_slot[x] {
                    continue;
                }
                let e = self.tree_arcs[slot];
                let (s, t) = self.endpoints(e);
                let y = if s == x { t } else { s };
                self.parent[y] = x;
                self.pred[y] = e;
                self.pred_slot[y] = slot;
                self.depth[y] = self.depth[x] + 1;
                // reduced cost cost + pi[s] - pi[t] vanishes on tree arcs
                if s == y {
                    self.pred_up[y] = true;
                    self.pi[y] = self.pi[x] - self.arc_cost(e);
                } else {
                    self.pred_up[y] = false;
                    self.pi[y] = self.pi[x] + self.arc_cost(e);
                }
                self.queue.push(y);
            }
        }
        debug_assert_eq!(self.queue.len(), nodes);
    }

    #[inline]
    fn reduced_cost(&self, e: usize) -> f64 {
        let i = e / self.n;
        let j = self.m + e % self.n;
        self.cost[e] + self.pi[i] - self.pi[j]
    }

    fn find_entering_arc(&mut self) -> Option<usize> {
        let arcs = self.m * self.n;
        let mut best = -self.eps;
        let mut chosen = None;
        let mut cnt = self.block_size;
        let order = (self.next_arc..arcs).chain(0..self.next_arc);
        for e in order {
            if self.state[e] == STATE_LOWER {
                let c = self.reduced_cost(e);
                if c < best {
                    best = c;
                    chosen = Some(e);
                }
            }
            cnt -= 1;
            if cnt == 0 {
                if chosen.is_some() {
                    self.next_arc = e + 1;
                    if self.next_arc == arcs {
                        self.next_arc = 0;
                    }
                    return chosen;
                }
                cnt = self.block_size;
            }
        }
        chosen
    }

    fn pivot(&mut self, in_arc: usize) {
        let (first, second) = self.endpoints(in_arc);

        let (mut u, mut v) = (first, second);
        while u != v {
            if self.depth[u] >= self.depth[v] {
                u = self.parent[u];
            } else {
                v = self.parent[v];
            }
        }
        let join = u;

        // Flow travels second -> join -> first around the cycle; the blocking
        // arc closest to the end of that walk leaves (strongly feasible rule).
        let mut delta = i64::MAX;
        let mut u_out = usize::MAX;
        let mut u = first;
        while u != join {
            if self.pred_up[u] {
                let d = self.flow[self.pred[u]];
                if d < delta {
                    delta = d;
                    u_out = u;
                }
            }
            u = self.parent[u];
        }
        let mut u = second;
        while u != join {
            if !self.pred_up[u] {
                let d = self.flow[self.pred[u]];
                if d <= delta {
                    delta = d;
                    u_out = u;
                }
            }
            u = self.parent[u];
        }
        assert!(u_out != usize::MAX, "transport problem is unbounded");

        if delta > 0 {
            self.flow[in_arc] += delta;
            let mut u = first;
            while u != join {
                let e = self.pred[u];
                self.flow[e] += if self.pred_up[u] { -delta } else { delta };
                u = self.parent[u];
            }
            let mut u = second;
            while u != join {
                let e = self.pred[u];
                self.flow[e] += if self.pred_up[u] { delta } else { -delta };
                u = self.parent[u];
            }
        }

        let out_arc = self.pred[u_out];
        self.state[in_arc] = STATE_TREE;
        self.state[out_arc] = STATE_LOWER;
        self.tree_arcs[self.pred_slot[u_out]] = in_arc;
        self.rebuild_tree();
    }

    /// Runs to optimality and returns the flow on the `m x n` real arcs.
    pub(crate) fn solve(mut self) -> Vec<i64> {
        while let Some(e) = self.find_entering_arc() {
            self.pivot(e);
        }
        let arcs = self.m * self.n;
        debug_assert!(
            self.flow[arcs..].iter().all(|&f| f == 0),
            "infeasible transport problem"
        );
        self.flow.truncate(arcs);
        self.flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_instance() {
        // supplies 20/30, demands 10/25/15
        let cost = [8.0, 6.0, 10.0, 9.0, 12.0, 13.0];
        let flows = NetworkSimplex::new(2, 3, &cost, &[20, 30], &[10, 25, 15]).solve();
        let total: f64 = flows.iter().zip(&cost).map(|(&f, &c)| f as f64 * c).sum();
        // row 0 fills column 1 (cost 6); row 1 takes the rest:
        // 20*6 + 10*9 + 5*12 + 15*13 = 465
        assert_eq!(total, 465.0);
        assert_eq!(flows.iter().sum::<i64>(), 50);
    }

    #[test]
    fn degenerate_assignment() {
        let cost = [0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0];
        let flows = NetworkSimplex::new(3, 3, &cost, &[3, 3, 3], &[3, 3, 3]).solve();
        assert_eq!(flows, vec![3, 0, 0, 0, 3, 0, 0, 0, 3]);
    }
}
