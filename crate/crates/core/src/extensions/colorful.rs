//! Colorful clustering: clients carry a color and each color class has its own
//! outlier budget.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{MetricInstance, PointId};

/// Client colors and per-color outlier budgets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: BTreeMap<PointId, usize>,
    budgets: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: BTreeMap<PointId, usize>, budgets: Vec<usize>) -> Result<Self> {
        if budgets.is_empty() {
            return Err(Error::domain("a coloring needs at least one color"));
        }
        if let Some((p, c)) = colors.iter().find(|(_, &c)| c >= budgets.len()) {
            return Err(Error::domain(format!(
                "point {p} has color {c} but only {} budgets are given",
                budgets.len()
            )));
        }
        Ok(Coloring { colors, budgets })
    }

    /// Every point gets color 0 with budget `m`.
    pub fn single(points: &[PointId], m: usize) -> Self {
        Coloring { colors: points.iter().map(|&p| (p, 0)).collect(), budgets: vec![m] }
    }

    pub fn color_of(&self, p: PointId) -> Option<usize> {
        self.colors.get(&p).copied()
    }

    pub fn budgets(&self) -> &[usize] {
        &self.budgets
    }

    pub fn num_colors(&self) -> usize {
        self.budgets.len()
    }

    pub fn total_budget(&self) -> usize {
        self.budgets.iter().sum()
    }

    pub fn colors(&self) -> &BTreeMap<PointId, usize> {
        &self.colors
    }

    /// Clients of each color class, in client order.
    pub fn classes(&self, clients: &[PointId]) -> Vec<Vec<PointId>> {
        let mut classes = vec![Vec::new(); self.budgets.len()];
        for &p in clients {
            if let Some(c) = self.color_of(p) {
                classes[c].push(p);
            }
        }
        classes
    }
}

/// A base instance plus a coloring of its clients. The base instance's `m` is
/// the sum of the per-color budgets.
#[derive(Debug, Clone)]
pub struct ColorfulInstance {
    base: MetricInstance,
    coloring: Coloring,
}

impl ColorfulInstance {
    pub fn new(base: &MetricInstance, coloring: Coloring) -> Result<Self> {
        if let Some(p) = base.clients().iter().find(|&&p| coloring.color_of(p).is_none()) {
            return Err(Error::domain(format!("client {p} has no color")));
        }
        let total = coloring.total_budget();
        if total > base.clients().len() {
            return Err(Error::domain(format!(
                "budgets sum to {total}, more than the {} clients",
                base.clients().len()
            )));
        }
        let base = base.with_params(base.k(), total, base.z())?;
        Ok(ColorfulInstance { base, coloring })
    }

    pub fn base(&self) -> &MetricInstance {
        &self.base
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }
}
