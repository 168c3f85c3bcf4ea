use rayon::prelude::*;

use super::exact::sorted_facilities;
use super::CenterConstraint;
use crate::cost::{CandidateTag, Solution};
use crate::error::Result;
use crate::metric::MetricInstance;
use crate::objective::Objective;

/// Exact optimum with outliers: every `k`-subset of the facilities is scored
/// by `cost_m`, and the cheapest wins (ties to the smallest id tuple).
pub fn exact_outlier_oracle(inst: &MetricInstance, budget: u64) -> Result<Solution> {
    constrained_oracle(inst, Objective::Trimmed, CenterConstraint::Cardinality(inst.k()), budget)
}

/// Brute force over the maximal feasible center sets of `constraint`, scored by
/// `objective` on the full instance.
pub fn constrained_oracle(
    inst: &MetricInstance,
    objective: Objective<'_>,
    constraint: CenterConstraint<'_>,
    budget: u64,
) -> Result<Solution> {
    let facilities = sorted_facilities(inst.facilities());
    let family = constraint.feasible_sets(&facilities, budget)?;
    let costs: Vec<f64> = family
        .par_iter()
        .map(|set| {
            let centers: Vec<_> = set.iter().map(|&i| facilities[i]).collect();
            objective.evaluate(inst, &centers).map(|(c, _)| c)
        })
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, &c) in costs.iter().enumerate() {
        if c < costs[best] {
            best = i;
        }
    }
    let centers: Vec<_> = family[best].iter().map(|&i| facilities[i]).collect();
    let (cost, outliers) = objective.evaluate(inst, &centers)?;
    Ok(Solution { centers, outliers, cost, candidate_tag: CandidateTag::Oracle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{DistanceOracle, PointId};
    use std::sync::Arc;

    fn ids(v: &[u32]) -> Vec<PointId> {
        v.iter().map(|&i| PointId(i)).collect()
    }

    #[test]
    fn four_point_example() {
        // X = {0, 1, 10, 50}, F = {0, 10}, k = 1, m = 1.
        let o = Arc::new(DistanceOracle::line(&[0.0, 1.0, 10.0, 50.0]).unwrap());
        let inst = MetricInstance::new(o, ids(&[0, 1, 2, 3]), ids(&[0, 2]), 1, 1, 1.0).unwrap();
        let sol = exact_outlier_oracle(&inst, 100).unwrap();
        assert_eq!(sol.centers, ids(&[0]));
        assert_eq!(sol.outliers, ids(&[3]));
        assert_eq!(sol.cost, 11.0);
        assert_eq!(sol.candidate_tag, CandidateTag::Oracle);
    }

    #[test]
    fn all_points_outliers_cost_nothing() {
        let o = Arc::new(DistanceOracle::line(&[0.0, 1.0, 10.0, 50.0]).unwrap());
        let inst = MetricInstance::new(o, ids(&[0, 1, 2, 3]), ids(&[0, 2]), 1, 4, 1.0).unwrap();
        let sol = exact_outlier_oracle(&inst, 100).unwrap();
        assert_eq!(sol.cost, 0.0);
        assert_eq!(sol.centers.len(), 1);
        assert_eq!(sol.outliers.len(), 4);
    }
}
