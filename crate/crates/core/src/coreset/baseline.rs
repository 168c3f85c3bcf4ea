use serde::{Deserialize, Serialize};

use crate::cost::{cost_m, WeightedPointSet};
use crate::error::Result;
use crate::metric::{MetricInstance, PointId};
use crate::solvers::{
    binomial, exact_constrained, local_search_constrained, CenterConstraint, Guarantee, SolverHandle, SolverKind,
};

/// The outlier-free instance `(X, F ∪ X, k + m, 0)`. Its optimum never exceeds
/// the optimum of the instance with outliers: the `m` outliers of an optimal
/// solution can be opened as extra centers at zero cost.
pub fn build_augmented_instance(inst: &MetricInstance) -> Result<MetricInstance> {
    let mut facilities = inst.facilities().to_vec();
    facilities.extend_from_slice(inst.clients());
    MetricInstance::new(
        inst.shared_oracle().clone(),
        inst.clients().to_vec(),
        facilities,
        inst.k() + inst.m(),
        0,
        inst.z(),
    )
}

/// How the baseline is computed: exact enumeration when the number of center
/// sets fits `exact_budget`, single-swap local search otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BaselineConfig {
    pub exact_budget: u64,
    pub local: SolverHandle,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig { exact_budget: 100_000, local: SolverHandle::local_search() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineResult {
    pub centers: Vec<PointId>,
    /// `cost_0(X, A)` with the instance exponent.
    pub cost: f64,
    pub method: SolverKind,
    pub guarantee: Guarantee,
    /// False when local search stopped at its iteration cap.
    pub converged: bool,
}

/// Baseline on an augmented instance, at most `k` centers.
pub fn baseline_solve(aug: &MetricInstance, config: &BaselineConfig) -> Result<BaselineResult> {
    baseline_solve_constrained(aug, CenterConstraint::Cardinality(aug.k()), config)
}

/// Baseline whose centers must satisfy `constraint`.
pub fn baseline_solve_constrained(
    aug: &MetricInstance,
    constraint: CenterConstraint<'_>,
    config: &BaselineConfig,
) -> Result<BaselineResult> {
    let points = WeightedPointSet::unit(aug.clients());
    let facilities = aug.facilities();
    let sets = binomial(facilities.len(), constraint.target_size(facilities));
    let (centers, method, converged) = if sets <= u128::from(config.exact_budget) {
        let choice = exact_constrained(aug.oracle(), &points, facilities, constraint, aug.z(), config.exact_budget)?;
        (choice.centers, SolverKind::Exact, true)
    } else {
        let r = local_search_constrained(aug.oracle(), &points, facilities, constraint, aug.z(), &config.local, None)?;
        (r.centers, SolverKind::LocalSearch, r.converged)
    };
    let handle = match method {
        SolverKind::Exact => SolverHandle::exact(),
        SolverKind::LocalSearch => config.local.clone(),
    };
    let cost = cost_m(aug.oracle(), aug.clients(), &centers, 0, aug.z())?;
    Ok(BaselineResult {
        centers,
        cost,
        method,
        guarantee: handle.beta_guarantee(aug.z(), constraint.is_matroid()),
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::DistanceOracle;
    use std::sync::Arc;

    fn ids(v: &[u32]) -> Vec<PointId> {
        v.iter().map(|&i| PointId(i)).collect()
    }

    #[test]
    fn augmentation_arithmetic() {
        let o = Arc::new(DistanceOracle::line(&(0..10).map(f64::from).collect::<Vec<_>>()).unwrap());
        let inst = MetricInstance::new(o.clone(), ids(&[0, 1, 2, 3, 4, 5]), ids(&[6, 7, 8, 9]), 2, 1, 1.0).unwrap();
        let aug = build_augmented_instance(&inst).unwrap();
        assert_eq!((aug.facilities().len(), aug.k(), aug.m()), (10, 3, 0));
        let inst0 = inst.with_params(2, 0, 1.0).unwrap();
        let aug0 = build_augmented_instance(&inst0).unwrap();
        assert_eq!((aug0.facilities().len(), aug0.k()), (10, 2));
    }

    #[test]
    fn two_pair_baseline() {
        // X = F' = {0, 1, 10, 11}, k' = 2: the best pairs cost 2.
        let o = Arc::new(DistanceOracle::line(&[0.0, 1.0, 10.0, 11.0]).unwrap());
        let inst = MetricInstance::all_points(o, 2, 0, 1.0).unwrap();
        let b = baseline_solve(&build_augmented_instance(&inst).unwrap(), &BaselineConfig::default()).unwrap();
        assert_eq!(b.cost, 2.0);
        assert_eq!(b.method, SolverKind::Exact);
        assert_eq!(b.guarantee, Guarantee::Factor(1.0));
        assert!(b.centers.iter().any(|c| c.0 <= 1) && b.centers.iter().any(|c| c.0 >= 2));
    }

    #[test]
    fn local_search_fallback_is_flagged() {
        let o = Arc::new(DistanceOracle::line(&[0.0, 1.0, 10.0, 11.0, 30.0]).unwrap());
        let inst = MetricInstance::all_points(o, 1, 1, 2.0).unwrap();
        let config = BaselineConfig { exact_budget: 1, ..BaselineConfig::default() };
        let b = baseline_solve(&build_augmented_instance(&inst).unwrap(), &config).unwrap();
        assert_eq!(b.method, SolverKind::LocalSearch);
        assert_eq!(b.guarantee, Guarantee::Heuristic);
        assert_eq!(b.centers.len(), 2);
    }
}
