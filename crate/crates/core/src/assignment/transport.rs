use super::network_simplex::NetworkSimplex;
use super::WeightMatrix;
use crate::error::{Error, Result};

/// Soft alignment between `m` row items and `n` column items: a non-negative
/// `m x n` matrix whose rows sum to `1/m` and columns to `1/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    rows: usize,
    cols: usize,
    gamma: Vec<f64>,
}

impl TransportPlan {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.gamma[i * self.cols + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.gamma.chunks(self.cols).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }
}

/// Integer flows of the scaled problem: every row ships `n` units, every
/// column receives `m` units. Dividing by `m * n` recovers the plan.
pub(crate) fn uniform_flows(m: usize, n: usize, cost: &[f64]) -> Vec<i64> {
    if m == 1 || n == 1 {
        // the marginals leave exactly one feasible plan: one unit per cell
        return vec![1; m * n];
    }
    let supply = vec![n as i64; m];
    let demand = vec![m as i64; n];
    NetworkSimplex::new(m, n, cost, &supply, &demand).solve()
}

/// Optimal objective of the uniform-marginal problem on a row-major cost slice.
pub(crate) fn uniform_objective(m: usize, n: usize, cost: &[f64]) -> f64 {
    let flows = uniform_flows(m, n, cost);
    let total: f64 = flows
        .iter()
        .zip(cost)
        .filter(|(&f, _)| f != 0)
        .map(|(&f, &c)| f as f64 * c)
        .sum();
    total / (m * n) as f64
}

/// Exactly optimal plan for `min sum gamma_ij * cost_ij` subject to row sums
/// `1/m`, column sums `1/n`, `gamma >= 0`.
///
/// Costs must be finite and non-negative, without a forbidden mask.
pub fn solve_transport(cost: &WeightMatrix) -> Result<TransportPlan> {
    if cost.has_mask() {
        return Err(Error::InvalidArgument(
            "transport costs cannot carry a forbidden mask".into(),
        ));
    }
    if let Some(c) = cost.data().iter().find(|&&c| c < 0.0) {
        return Err(Error::InvalidArgument(format!("negative transport cost {c}")));
    }
    let (m, n) = (cost.rows(), cost.cols());
    let scale = (m * n) as f64;
    let gamma = uniform_flows(m, n, cost.data())
        .into_iter()
        .map(|f| f as f64 / scale)
        .collect();
    Ok(TransportPlan {
        rows: m,
        cols: n,
        gamma,
    })
}

/// `sum_ij plan_ij * cost_ij`.
pub fn transport_objective(cost: &WeightMatrix, plan: &TransportPlan) -> Result<f64> {
    if (cost.rows(), cost.cols()) != (plan.rows, plan.cols) {
        return Err(Error::DimensionMismatch {
            expected: (cost.rows(), cost.cols()),
            found: (plan.rows, plan.cols),
        });
    }
    Ok(cost.data().iter().zip(&plan.gamma).map(|(&c, &g)| c * g).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    fn check_marginals(plan: &TransportPlan) {
        let (m, n) = (plan.rows() as f64, plan.cols() as f64);
        for s in plan.row_sums() {
            assert!((s - 1.0 / m).abs() < TOL, "row sum {s}");
        }
        for s in plan.col_sums() {
            assert!((s - 1.0 / n).abs() < TOL, "col sum {s}");
        }
        assert!(plan.as_slice().iter().all(|&g| g >= 0.0));
        assert!((plan.as_slice().iter().sum::<f64>() - 1.0).abs() < TOL);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for k in 0..=p.len() {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Minimum over every integer point of the scaled polytope (rows ship n,
    /// columns receive m). The polytope is integral, so this is the optimum.
    fn integer_flow_oracle(cost: &WeightMatrix) -> f64 {
        fn rec(
            cost: &WeightMatrix,
            cell: usize,
            row_left: &mut Vec<i64>,
            col_left: &mut Vec<i64>,
            acc: f64,
            best: &mut f64,
        ) {
            let (m, n) = (cost.rows(), cost.cols());
            if cell == m * n {
                if row_left.iter().all(|&r| r == 0) && col_left.iter().all(|&c| c == 0) {
                    *best = best.min(acc);
                }
                return;
            }
            let (i, j) = (cell / n, cell % n);
            let hi = row_left[i].min(col_left[j]);
            for f in 0..=hi {
                row_left[i] -= f;
                col_left[j] -= f;
                rec(
                    cost,
                    cell + 1,
                    row_left,
                    col_left,
                    acc + f as f64 * cost.get(i, j),
                    best,
                );
                row_left[i] += f;
                col_left[j] += f;
            }
        }
        let (m, n) = (cost.rows(), cost.cols());
        let mut best = f64::INFINITY;
        rec(cost, 0, &mut vec![n as i64; m], &mut vec![m as i64; n], 0.0, &mut best);
        best / (m * n) as f64
    }

    fn solve(rows: &[Vec<f64>]) -> (WeightMatrix, TransportPlan, f64) {
        let cost = WeightMatrix::from_rows(rows).unwrap();
        let plan = solve_transport(&cost).unwrap();
        let obj = transport_objective(&cost, &plan).unwrap();
        (cost, plan, obj)
    }

    #[test]
    fn zero_cost_diagonal() {
        let (_, plan, obj) = solve(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(plan.as_slice(), &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(obj, 0.0);
    }

    #[test]
    fn single_row_is_forced() {
        let (_, plan, obj) = solve(&[vec![0.2, 0.4]]);
        assert_eq!(plan.as_slice(), &[0.5, 0.5]);
        assert!((obj - 0.3).abs() < 1e-15);
    }

    #[test]
    fn all_zero_cost() {
        let (_, plan, obj) = solve(&[vec![0.0; 4], vec![0.0; 4], vec![0.0; 4]]);
        check_marginals(&plan);
        assert_eq!(obj, 0.0);
    }

    #[test]
    fn square_three_matches_permutation_oracle() {
        let rows = vec![vec![0.3, 0.9, 0.2], vec![0.8, 0.1, 0.7], vec![0.4, 0.6, 0.5]];
        let (cost, plan, obj) = solve(&rows);
        check_marginals(&plan);
        let best = permutations(3)
            .iter()
            .map(|p| p.iter().enumerate().map(|(i, &j)| cost.get(i, j)).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        assert!((obj - best / 3.0).abs() < TOL);
    }

    #[test]
    fn rejects_masks_negative_costs_and_mismatched_plans() {
        let masked = WeightMatrix::with_mask(1, 1, vec![0.0], vec![true]).unwrap();
        assert!(solve_transport(&masked).is_err());
        let negative = WeightMatrix::from_rows(&[vec![-0.1]]).unwrap();
        assert!(solve_transport(&negative).is_err());
        let (_, plan, _) = solve(&[vec![0.2, 0.4]]);
        let other = WeightMatrix::from_rows(&[vec![0.2], vec![0.4]]).unwrap();
        assert!(matches!(
            transport_objective(&other, &plan),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn larger_instances_stay_feasible() {
        // deterministic pseudo-random costs, sizes beyond brute force
        let mut x = 12345u64;
        let mut next = || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x >> 11) as f64 / (1u64 << 53) as f64
        };
        for (m, n) in [(25, 25), (7, 31), (40, 3), (60, 60)] {
            let cost = WeightMatrix::from_fn(m, n, |_, _| next()).unwrap();
            let plan = solve_transport(&cost).unwrap();
            check_marginals(&plan);
        }
    }

    fn square_costs() -> impl Strategy<Value = WeightMatrix> {
        (2..=5usize).prop_flat_map(|n| {
            proptest::collection::vec(0.0..1.0f64, n * n).prop_map(move |d| WeightMatrix::new(n, n, d).unwrap())
        })
    }

    fn rect_costs() -> impl Strategy<Value = WeightMatrix> {
        (1..=3usize, 1..=3usize).prop_flat_map(|(m, n)| {
            proptest::collection::vec(0.0..1.0f64, m * n).prop_map(move |d| WeightMatrix::new(m, n, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn square_matches_assignment_optimum(cost in square_costs()) {
            let n = cost.rows();
            let plan = solve_transport(&cost).unwrap();
            check_marginals(&plan);
            let obj = transport_objective(&cost, &plan).unwrap();
            let best = permutations(n)
                .iter()
                .map(|p| p.iter().enumerate().map(|(i, &j)| cost.get(i, j)).sum::<f64>())
                .fold(f64::INFINITY, f64::min);
            prop_assert!((obj - best / n as f64).abs() < TOL, "{} vs {}", obj, best / n as f64);
        }

        #[test]
        fn rectangular_matches_integer_flow_oracle(cost in rect_costs()) {
            let plan = solve_transport(&cost).unwrap();
            check_marginals(&plan);
            let obj = transport_objective(&cost, &plan).unwrap();
            let best = integer_flow_oracle(&cost);
            prop_assert!((obj - best).abs() < TOL, "{} vs {}", obj, best);
        }

        #[test]
        fn objective_scales_with_costs(cost in rect_costs(), lambda in 0.1..10.0f64) {
            let scaled = WeightMatrix::new(cost.rows(), cost.cols(), cost.data().iter().map(|c| c * lambda).collect()).unwrap();
            let a = transport_objective(&cost, &solve_transport(&cost).unwrap()).unwrap();
            let b = transport_objective(&scaled, &solve_transport(&scaled).unwrap()).unwrap();
            prop_assert!((b - lambda * a).abs() < TOL * lambda.max(1.0));
        }
    }
}
