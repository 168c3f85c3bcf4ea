use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::CostTable;
use super::CenterConstraint;
use crate::cost::WeightedPointSet;
use crate::error::Result;
use crate::metric::{DistanceOracle, PointId};

/// A center set and its outlier-free weighted cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterChoice {
    pub centers: Vec<PointId>,
    pub cost: f64,
}

/// Index and cost of the cheapest set of `family`; the earliest set wins ties.
pub(crate) fn best_in_family(table: &CostTable, family: &[Vec<usize>], active: Option<&[bool]>) -> (usize, f64) {
    family
        .par_iter()
        .enumerate()
        .map(|(i, set)| (i, table.set_cost(set, active)))
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| match a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)) {
                std::cmp::Ordering::Greater => b,
                _ => a,
            },
        )
}

pub(crate) fn sorted_facilities(facilities: &[PointId]) -> Vec<PointId> {
    let mut f = facilities.to_vec();
    f.sort_unstable();
    f.dedup();
    f
}

/// Optimal weighted `(k, z)`-clustering without outliers by enumerating all
/// `min(k, |F|)`-subsets of `facilities`. Ties go to the lexicographically
/// smallest id tuple. Refuses with [`crate::Error::BudgetExceeded`] when the
/// number of subsets exceeds `budget`.
pub fn exact_kmedian(
    oracle: &DistanceOracle,
    points: &WeightedPointSet,
    facilities: &[PointId],
    k: usize,
    z: f64,
    budget: u64,
) -> Result<CenterChoice> {
    exact_constrained(oracle, points, facilities, CenterConstraint::Cardinality(k), z, budget)
}

/// [`exact_kmedian`] over the maximal feasible sets of an arbitrary constraint.
pub fn exact_constrained(
    oracle: &DistanceOracle,
    points: &WeightedPointSet,
    facilities: &[PointId],
    constraint: CenterConstraint<'_>,
    z: f64,
    budget: u64,
) -> Result<CenterChoice> {
    let facilities = sorted_facilities(facilities);
    let family = constraint.feasible_sets(&facilities, budget)?;
    let table = CostTable::build(oracle, points, &facilities, z);
    let (best, cost) = best_in_family(&table, &family, None);
    Ok(CenterChoice { centers: family[best].iter().map(|&i| facilities[i]).collect(), cost })
}
