use super::{MeasureKind, MeasureValue};
use crate::assignment::{solve_transport, uniform_objective, TransportPlan, WeightMatrix};
use crate::error::{Error, Result};
use crate::geometry::delta_bbox;
use crate::model::{Element, Layout};

/// Element transport cost `1 - (delta_bbox + delta_label) / 2`, in `[0, 1]`.
#[inline]
pub fn ltsim_cost(e1: &Element, e2: &Element) -> f64 {
    let label = if e1.category == e2.category { 1.0 } else { 0.0 };
    1.0 - (delta_bbox(&e1.bbox, &e2.bbox) + label) / 2.0
}

fn cost_matrix(a: &Layout, b: &Layout) -> Vec<f64> {
    let mut cost = Vec::with_capacity(a.len() * b.len());
    for ea in &a.elements {
        for eb in &b.elements {
            cost.push(ltsim_cost(ea, eb));
        }
    }
    cost
}

/// Optimal transport cost between the two layouts' elements under uniform
/// element mass. Bare `f64` form of [`ltsim_emd`] for hot loops.
pub fn ltsim_emd_value(a: &Layout, b: &Layout) -> Result<f64> {
    a.ensure_non_empty()?;
    b.ensure_non_empty()?;
    Ok(uniform_objective(a.len(), b.len(), &cost_matrix(a, b)))
}

pub fn ltsim_emd(a: &Layout, b: &Layout) -> Result<MeasureValue> {
    Ok(MeasureValue::new(MeasureKind::LtsimEmd, ltsim_emd_value(a, b)?))
}

/// The optimal soft alignment between the elements of `a` (rows) and `b` (columns).
pub fn ltsim_plan(a: &Layout, b: &Layout) -> Result<TransportPlan> {
    a.ensure_non_empty()?;
    b.ensure_non_empty()?;
    let cost = WeightMatrix::new(a.len(), b.len(), cost_matrix(a, b))?;
    solve_transport(&cost)
}

/// `exp(-EMD / sigma)`, in `(0, 1]`.
pub fn ltsim(a: &Layout, b: &Layout, sigma: f64) -> Result<MeasureValue> {
    check_sigma(sigma)?;
    let emd = ltsim_emd_value(a, b)?;
    Ok(MeasureValue::new(MeasureKind::Ltsim, (-emd / sigma).exp())
        .with("emd", emd)
        .with("sigma", sigma))
}

pub(crate) fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSigma(sigma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BBox, Category};

    fn el(l: f64, t: f64, w: f64, h: f64, c: u32) -> Element {
        Element::new(BBox::new(l, t, w, h), Category(c))
    }

    #[test]
    fn cost_examples() {
        let e = el(0.1, 0.2, 0.3, 0.4, 0);
        assert_eq!(ltsim_cost(&e, &e), 0.0);
        assert!((ltsim_cost(&e, &el(0.1, 0.2, 0.3, 0.4, 1)) - 0.5).abs() < 1e-12);
        assert!((ltsim_cost(&el(0.0, 0.0, 0.5, 1.0, 0), &el(0.5, 0.0, 0.5, 1.0, 0)) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn emd_examples() {
        let e = el(0.1, 0.2, 0.3, 0.4, 0);
        let a = Layout::new("a", vec![e, el(0.5, 0.5, 0.2, 0.2, 1)]);
        assert_eq!(ltsim_emd_value(&a, &a).unwrap(), 0.0);

        let one = Layout::new("one", vec![e]);
        let relabeled = Layout::new("r", vec![el(0.1, 0.2, 0.3, 0.4, 1)]);
        assert!((ltsim_emd_value(&one, &relabeled).unwrap() - 0.5).abs() < 1e-12);

        let twice = Layout::new("two", vec![e, e]);
        assert_eq!(ltsim_emd_value(&one, &twice).unwrap(), 0.0);
    }

    #[test]
    fn ltsim_examples() {
        let one = Layout::new("a", vec![el(0.1, 0.2, 0.3, 0.4, 0)]);
        assert_eq!(ltsim(&one, &one, 1.0).unwrap().value, 1.0);
        let relabeled = Layout::new("b", vec![el(0.1, 0.2, 0.3, 0.4, 1)]);
        let v = ltsim(&one, &relabeled, 1.0).unwrap().value;
        assert!((v - (-0.5f64).exp()).abs() < 1e-9);
        let left = Layout::new("l", vec![el(0.0, 0.0, 0.5, 1.0, 0)]);
        let right = Layout::new("r", vec![el(0.5, 0.0, 0.5, 1.0, 0)]);
        let v = ltsim(&left, &right, 1.0).unwrap().value;
        assert!((v - (-0.25f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_sigma_and_empty_layouts() {
        let one = Layout::new("a", vec![el(0.1, 0.2, 0.3, 0.4, 0)]);
        for s in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(ltsim(&one, &one, s), Err(Error::InvalidSigma(_))));
        }
        let empty = Layout::new("e", vec![]);
        assert!(matches!(ltsim_emd(&one, &empty), Err(Error::EmptyLayout(id)) if id == "e"));
    }

    #[test]
    fn plan_has_uniform_marginals() {
        let a = Layout::new("a", vec![el(0.1, 0.2, 0.3, 0.4, 0), el(0.5, 0.5, 0.2, 0.2, 1)]);
        let b = Layout::new(
            "b",
            vec![
                el(0.1, 0.2, 0.3, 0.3, 0),
                el(0.6, 0.5, 0.2, 0.2, 1),
                el(0.0, 0.0, 0.1, 0.1, 2),
            ],
        );
        let plan = ltsim_plan(&a, &b).unwrap();
        for s in plan.row_sums() {
            assert!((s - 0.5).abs() < 1e-12);
        }
        for s in plan.col_sums() {
            assert!((s - 1.0 / 3.0).abs() < 1e-12);
        }
    }
}
