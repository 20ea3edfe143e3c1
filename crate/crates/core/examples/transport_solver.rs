//! Uses the exact transport solver on a rectangular cost matrix and checks
//! the plan's marginals.

use layout_metrics::assignment::{solve_transport, transport_objective, WeightMatrix};

fn main() -> layout_metrics::Result<()> {
    let cost = WeightMatrix::from_rows(&[
        vec![0.1, 0.7, 0.4, 0.9],
        vec![0.8, 0.2, 0.5, 0.3],
        vec![0.6, 0.6, 0.1, 0.7],
    ])?;
    let plan = solve_transport(&cost)?;
    println!("objective {:.6}", transport_objective(&cost, &plan)?);
    println!("row sums    {:?}", plan.row_sums());
    println!("column sums {:?}", plan.col_sums());
    Ok(())
}
