//! Outlier-free clustering solvers and brute-force oracles.
//!
//! Solvers work on weighted point sets natively. The exact solver enumerates
//! every feasible center set; single-swap local search is the polynomial
//! fallback. Both accept either a cardinality bound or a matroid constraint on
//! the centers.

mod blackbox;
mod exact;
mod expand;
mod local_search;
mod oracle;
mod table;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::matroid::Matroid;
use crate::metric::PointId;

pub(crate) use blackbox::PreparedSolver;
pub use exact::{exact_constrained, exact_kmedian, CenterChoice};
pub use expand::expand_unweighted;
pub use local_search::{local_search_constrained, local_search_kmedian, LocalSearchResult};
pub use oracle::{constrained_oracle, exact_outlier_oracle};
pub use table::CostTable;

/// Which solver answers the outlier-free subproblems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Exact,
    LocalSearch,
}

/// Proven approximation factor of a solver, if any.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    Factor(f64),
    Heuristic,
}

impl Guarantee {
    pub fn factor(self) -> Option<f64> {
        match self {
            Guarantee::Factor(f) => Some(f),
            Guarantee::Heuristic => None,
        }
    }
}

/// Configuration of the black-box solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverHandle {
    pub kind: SolverKind,
    /// Maximum number of accepted swaps in local search.
    pub iteration_cap: usize,
    /// A swap is taken only if it lowers the cost below `(1 - threshold) * cost`.
    pub improvement_threshold: f64,
    /// Maximum number of center sets the exact solver may enumerate.
    pub enumeration_budget: u64,
    /// Extra local-search runs from seeded random starts.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SolverHandle {
    fn default() -> Self {
        SolverHandle {
            kind: SolverKind::Exact,
            iteration_cap: 10_000,
            improvement_threshold: 1e-3,
            enumeration_budget: 2_000_000,
            restarts: 0,
            seed: 0,
        }
    }
}

impl SolverHandle {
    pub fn exact() -> Self {
        SolverHandle::default()
    }

    pub fn local_search() -> Self {
        SolverHandle { kind: SolverKind::LocalSearch, ..SolverHandle::default() }
    }

    /// Exact enumeration is optimal; single-swap local search is a
    /// 5-approximation for k-median. Other exponents and matroid constraints
    /// get no claim.
    pub fn beta_guarantee(&self, z: f64, constrained: bool) -> Guarantee {
        match self.kind {
            SolverKind::Exact => Guarantee::Factor(1.0),
            SolverKind::LocalSearch if z == 1.0 && !constrained => Guarantee::Factor(5.0),
            SolverKind::LocalSearch => Guarantee::Heuristic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.iteration_cap == 0 {
            return Err(Error::domain("iteration cap must be positive"));
        }
        if !(self.improvement_threshold > 0.0 && self.improvement_threshold < 1.0) {
            return Err(Error::domain("improvement threshold must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Constraint on a center set.
#[derive(Debug, Clone, Copy)]
pub enum CenterConstraint<'a> {
    /// At most this many centers.
    Cardinality(usize),
    /// The centers must be independent in the matroid.
    Matroid(&'a Matroid),
}

impl CenterConstraint<'_> {
    /// Size of the center sets a solver searches over. Adding a center never
    /// raises the cost, so only maximal feasible sets are considered.
    pub fn target_size(&self, facilities: &[PointId]) -> usize {
        match self {
            CenterConstraint::Cardinality(k) => (*k).min(facilities.len()),
            CenterConstraint::Matroid(m) => m.rank().min(facilities.len()),
        }
    }

    pub fn allows(&self, set: &[PointId]) -> bool {
        match self {
            CenterConstraint::Cardinality(k) => set.len() <= *k,
            CenterConstraint::Matroid(m) => m.is_independent(set),
        }
    }

    pub fn is_matroid(&self) -> bool {
        matches!(self, CenterConstraint::Matroid(_))
    }

    /// Every feasible center set of the target size, as sorted index tuples
    /// into `facilities`, in lexicographic order.
    pub fn feasible_sets(&self, facilities: &[PointId], budget: u64) -> Result<Vec<Vec<usize>>> {
        let r = self.target_size(facilities);
        let needed = binomial(facilities.len(), r);
        if needed > u128::from(budget) {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut sets = Vec::new();
        let mut ids = Vec::with_capacity(r);
        for combo in Combinations::new(facilities.len(), r) {
            ids.clear();
            ids.extend(combo.iter().map(|&i| facilities[i]));
            if self.allows(&ids) {
                sets.push(combo);
            }
        }
        if sets.is_empty() {
            return Err(Error::domain("no feasible center set of positive size"));
        }
        Ok(sets)
    }
}

/// `n choose r`, saturating at `u128::MAX`.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic `r`-combinations of `0..n`.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, r: usize) -> Self {
        Combinations { n, current: (r <= n).then(|| (0..r).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let r = out.len();
        let mut next = out.clone();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - r + i {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}
