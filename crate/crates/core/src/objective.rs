//! Evaluation of a center set against the original instance.

use crate::cost::{cost_m, farthest_m};
use crate::error::Result;
use crate::extensions::colorful::Coloring;
use crate::metric::{MetricInstance, PointId};

/// What a center set is scored by.
#[derive(Debug, Clone, Copy)]
pub enum Objective<'a> {
    /// `cost_m(X, C)` with the instance's `m`.
    Trimmed,
    /// `sum_t cost_{m_t}(X_t, C)` over color classes.
    Colorful(&'a Coloring),
}

impl Objective<'_> {
    /// Cost of `centers` and the outliers realizing it. For the colorful
    /// objective the outliers are listed color by color.
    pub fn evaluate(&self, inst: &MetricInstance, centers: &[PointId]) -> Result<(f64, Vec<PointId>)> {
        let (oracle, z) = (inst.oracle(), inst.z());
        match self {
            Objective::Trimmed => {
                let cost = cost_m(oracle, inst.clients(), centers, inst.m(), z)?;
                let outliers = farthest_m(oracle, inst.clients(), centers, inst.m(), z)?;
                Ok((cost, outliers))
            }
            Objective::Colorful(coloring) => {
                let mut cost = 0.0;
                let mut outliers = Vec::new();
                for (class, &budget) in coloring.classes(inst.clients()).iter().zip(coloring.budgets()) {
                    let budget = budget.min(class.len());
                    cost += cost_m(oracle, class, centers, budget, z)?;
                    outliers.extend(farthest_m(oracle, class, centers, budget, z)?);
                }
                Ok((cost, outliers))
            }
        }
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Objective::Trimmed => None,
            Objective::Colorful(c) => Some(c),
        }
    }
}
