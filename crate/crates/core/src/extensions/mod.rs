//! Variants of the reduction: general exponents, per-color outlier budgets,
//! matroid constraints on the centers, and colors with a matroid together.

pub mod colorful;
pub mod matroid;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::objective::Objective;
use crate::reduction::{run, Problem, ReductionConfig, ReductionReport};
use colorful::ColorfulInstance;
use matroid::Matroid;

/// `(k, z)`-clustering with outliers. The exponent is the instance's `z`; the
/// pipeline is the one of [`crate::reduction::solve_with_outliers`] with
/// `z`-powered costs and radius `(cost_0(X, A) / (tau n))^(1/z)`.
pub fn kz_solve_with_outliers(inst: &MetricInstance, config: &ReductionConfig) -> Result<ReductionReport> {
    crate::reduction::solve_with_outliers(inst, config)
}

/// Colorful clustering: rings are split by color, subsets `T` take at most
/// `m_t` entries of color `t`, and center sets are scored by
/// `sum_t cost_{m_t}(X_t, C)`.
pub fn colorful_solve(cinst: &ColorfulInstance, config: &ReductionConfig) -> Result<ReductionReport> {
    let problem =
        Problem { inst: cinst.base(), objective: Objective::Colorful(cinst.coloring()), matroid: None };
    run(&problem, config)
}

/// Matroid median with outliers: the centers must be independent in
/// `matroid`, whose rank plays the role of `k`. The instance's `k` is ignored.
/// Facilities and clients must be disjoint, and the matroid's ground set must
/// lie inside the facilities.
pub fn matroid_median_solve(
    inst: &MetricInstance,
    matroid: &Matroid,
    config: &ReductionConfig,
) -> Result<ReductionReport> {
    check_matroid_instance(inst, matroid)?;
    run(&Problem { inst, objective: Objective::Trimmed, matroid: Some(matroid) }, config)
}

/// Colors and a matroid together.
pub fn colorful_matroid_solve(
    cinst: &ColorfulInstance,
    matroid: &Matroid,
    config: &ReductionConfig,
) -> Result<ReductionReport> {
    check_matroid_instance(cinst.base(), matroid)?;
    let problem =
        Problem { inst: cinst.base(), objective: Objective::Colorful(cinst.coloring()), matroid: Some(matroid) };
    run(&problem, config)
}

fn check_matroid_instance(inst: &MetricInstance, matroid: &Matroid) -> Result<()> {
    if matroid.rank() == 0 {
        return Err(Error::domain("the matroid has no independent set of positive rank"));
    }
    let facilities: BTreeSet<_> = inst.facilities().iter().collect();
    if let Some(p) = inst.clients().iter().find(|p| facilities.contains(p)) {
        return Err(Error::domain(format!("point {p} is both a client and a facility")));
    }
    if let Some(p) = matroid.ground_set().iter().find(|p| !facilities.contains(p)) {
        return Err(Error::domain(format!("matroid element {p} is not a facility")));
    }
    Ok(())
}
