//! Single-swap local search.
//!
//! Starting from the first feasible centers in facility order, repeatedly apply
//! the best swap (one center out, one facility in) while it lowers the cost by
//! at least a factor `1 - threshold`. For k-median this local optimum is a
//! 5-approximation up to the threshold slack.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::exact::sorted_facilities;
use super::table::CostTable;
use super::{CenterConstraint, SolverHandle};
use crate::cost::WeightedPointSet;
use crate::error::{Error, Result};
use crate::extensions::matroid::MemoizedMatroid;
use crate::metric::{DistanceOracle, PointId};
use crate::seed::StreamSeed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalSearchResult {
    pub centers: Vec<PointId>,
    pub cost: f64,
    /// Accepted swaps.
    pub iterations: usize,
    /// False when the iteration cap stopped the search before a local optimum.
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome {
    pub centers: Vec<usize>,
    pub cost: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Search space: columns of a cost table, optionally restricted by a matroid.
pub(crate) struct SwapSearch<'a> {
    pub table: &'a CostTable,
    pub facilities: &'a [PointId],
    pub matroid: Option<&'a MemoizedMatroid<'a>>,
    pub size: usize,
}

impl SwapSearch<'_> {
    fn independent(&self, cols: &[usize]) -> bool {
        match self.matroid {
            None => cols.len() <= self.size,
            Some(m) => {
                let ids: Vec<PointId> = cols.iter().map(|&c| self.facilities[c]).collect();
                m.is_independent(&ids)
            }
        }
    }

    /// Greedy feasible set following `order`.
    fn greedy(&self, order: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut set = Vec::with_capacity(self.size);
        for c in order {
            if set.len() == self.size {
                break;
            }
            set.push(c);
            if !self.independent(&set) {
                set.pop();
            }
        }
        set.sort_unstable();
        set
    }

    pub fn initial(&self) -> Vec<usize> {
        self.greedy(0..self.table.cols())
    }

    pub fn run(&self, init: Vec<usize>, active: Option<&[bool]>, handle: &SolverHandle) -> SearchOutcome {
        let table = self.table;
        let mut current = init;
        current.sort_unstable();
        let mut cost = table.set_cost(&current, active);
        let rows: Vec<usize> = (0..table.rows()).filter(|&r| active.is_none_or(|a| a[r])).collect();
        let mut iterations = 0;
        let mut converged = false;
        let mut in_set = vec![false; table.cols()];
        while iterations < handle.iteration_cap {
            if cost <= 0.0 {
                converged = true;
                break;
            }
            in_set.iter_mut().for_each(|b| *b = false);
            current.iter().for_each(|&c| in_set[c] = true);
            // Nearest and second-nearest center value per row.
            let mut first = vec![(f64::INFINITY, usize::MAX); table.rows()];
            let mut second = vec![f64::INFINITY; table.rows()];
            for &r in &rows {
                let row = table.row(r);
                for (pos, &c) in current.iter().enumerate() {
                    let v = row[c];
                    if v < first[r].0 {
                        second[r] = first[r].0;
                        first[r] = (v, pos);
                    } else if v < second[r] {
                        second[r] = v;
                    }
                }
            }
            let mut best: Option<(f64, usize, usize)> = None;
            let mut candidate = current.clone();
            for pos in 0..current.len() {
                for f in (0..table.cols()).filter(|&f| !in_set[f]) {
                    if self.matroid.is_some() {
                        candidate.copy_from_slice(&current);
                        candidate[pos] = f;
                        if !self.independent(&candidate) {
                            continue;
                        }
                    }
                    let swapped: f64 = rows
                        .iter()
                        .map(|&r| {
                            let kept = if first[r].1 == pos { second[r] } else { first[r].0 };
                            kept.min(table.value(r, f))
                        })
                        .sum();
                    if best.is_none_or(|(b, _, _)| swapped < b) {
                        best = Some((swapped, pos, f));
                    }
                }
            }
            match best {
                Some((swapped, pos, f)) if swapped < (1.0 - handle.improvement_threshold) * cost => {
                    current[pos] = f;
                    current.sort_unstable();
                    cost = table.set_cost(&current, active);
                    iterations += 1;
                }
                _ => {
                    converged = true;
                    break;
                }
            }
        }
        SearchOutcome { centers: current, cost, iterations, converged }
    }

    /// Deterministic start plus `handle.restarts` seeded random starts; the
    /// cheapest outcome wins, earlier runs winning ties.
    pub fn run_with_restarts(
        &self,
        init: Option<Vec<usize>>,
        active: Option<&[bool]>,
        handle: &SolverHandle,
    ) -> SearchOutcome {
        let mut best = self.run(init.unwrap_or_else(|| self.initial()), active, handle);
        for r in 0..handle.restarts {
            let mut order: Vec<usize> = (0..self.table.cols()).collect();
            order.shuffle(&mut StreamSeed(handle.seed).derive("local-search-restart", r as u64).rng());
            let outcome = self.run(self.greedy(order), active, handle);
            if outcome.cost < best.cost {
                best = SearchOutcome { converged: best.converged && outcome.converged, ..outcome };
            }
        }
        best
    }
}

fn columns_of(facilities: &[PointId], init: &[PointId]) -> Result<Vec<usize>> {
    init.iter()
        .map(|p| {
            facilities
                .binary_search(p)
                .map_err(|_| Error::domain(format!("initial center {p} is not a facility")))
        })
        .collect()
}

/// Single-swap local search for weighted `(k, z)`-clustering without outliers.
/// Starts from `init` when given, otherwise from the first `k` facilities by id.
pub fn local_search_kmedian(
    oracle: &DistanceOracle,
    points: &WeightedPointSet,
    facilities: &[PointId],
    k: usize,
    z: f64,
    handle: &SolverHandle,
    init: Option<&[PointId]>,
) -> Result<LocalSearchResult> {
    let unique = sorted_facilities(facilities);
    if k > unique.len() {
        return Err(Error::domain(format!("k = {k} exceeds the {} facilities", unique.len())));
    }
    local_search_constrained(oracle, points, facilities, CenterConstraint::Cardinality(k), z, handle, init)
}

/// Local search over the maximal feasible sets of a constraint. With a matroid,
/// only swaps that keep the centers independent are considered.
pub fn local_search_constrained(
    oracle: &DistanceOracle,
    points: &WeightedPointSet,
    facilities: &[PointId],
    constraint: CenterConstraint<'_>,
    z: f64,
    handle: &SolverHandle,
    init: Option<&[PointId]>,
) -> Result<LocalSearchResult> {
    handle.validate()?;
    let facilities = sorted_facilities(facilities);
    let size = constraint.target_size(&facilities);
    if size == 0 {
        return Err(Error::domain("no feasible center set of positive size"));
    }
    let table = CostTable::build(oracle, points, &facilities, z);
    let memo = match constraint {
        CenterConstraint::Matroid(m) => Some(MemoizedMatroid::new(m)),
        CenterConstraint::Cardinality(_) => None,
    };
    let search = SwapSearch { table: &table, facilities: &facilities, matroid: memo.as_ref(), size };
    let init = match init {
        Some(ids) => {
            let cols = columns_of(&facilities, ids)?;
            let ids: Vec<PointId> = cols.iter().map(|&c| facilities[c]).collect();
            if cols.len() != size || !constraint.allows(&ids) {
                return Err(Error::domain("initial centers are not a maximal feasible set"));
            }
            Some(cols)
        }
        None => None,
    };
    let outcome = search.run_with_restarts(init, None, handle);
    if outcome.centers.len() != size {
        return Err(Error::domain("greedy start did not reach a maximal feasible set"));
    }
    Ok(LocalSearchResult {
        centers: outcome.centers.iter().map(|&c| facilities[c]).collect(),
        cost: outcome.cost,
        iterations: outcome.iterations,
        converged: outcome.converged,
    })
}
