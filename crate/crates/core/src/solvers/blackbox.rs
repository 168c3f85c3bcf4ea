//! The outlier-free solver as seen by the reduction: prepared once per coreset,
//! then queried once per enumerated outlier subset `T` with the entries of `T`
//! switched off.

use super::exact::best_in_family;
use super::local_search::SwapSearch;
use super::table::CostTable;
use super::{CenterConstraint, SolverHandle, SolverKind};
use crate::error::{Error, Result};
use crate::extensions::matroid::MemoizedMatroid;
use crate::metric::PointId;

/// Largest `sets x rows` table kept in memory by the exact solver.
const PRECOMPUTE_LIMIT: usize = 20_000_000;

pub(crate) enum PreparedSolver<'a> {
    /// Per-set row costs precomputed; a query subtracts the excluded rows and
    /// re-sums exactly only the sets that could be the true minimum.
    ExactTable {
        table: &'a CostTable,
        family: Vec<Vec<usize>>,
        per_set: Vec<f64>,
        totals: Vec<f64>,
    },
    ExactDirect {
        table: &'a CostTable,
        family: Vec<Vec<usize>>,
    },
    Search {
        search: SwapSearch<'a>,
        handle: &'a SolverHandle,
        init: Vec<usize>,
    },
    Refused(Error),
}

impl<'a> PreparedSolver<'a> {
    pub fn new(
        table: &'a CostTable,
        facilities: &'a [PointId],
        constraint: CenterConstraint<'_>,
        memo: Option<&'a MemoizedMatroid<'a>>,
        handle: &'a SolverHandle,
    ) -> Self {
        match handle.kind {
            SolverKind::Exact => {
                let family = match constraint.feasible_sets(facilities, handle.enumeration_budget) {
                    Ok(f) => f,
                    Err(e) => return PreparedSolver::Refused(e),
                };
                let rows = table.rows();
                if family.len().saturating_mul(rows) > PRECOMPUTE_LIMIT {
                    return PreparedSolver::ExactDirect { table, family };
                }
                let mut per_set = Vec::with_capacity(family.len() * rows);
                let mut totals = Vec::with_capacity(family.len());
                for set in &family {
                    let start = per_set.len();
                    per_set.extend((0..rows).map(|r| table.row_cost(r, set)));
                    totals.push(per_set[start..].iter().sum());
                }
                PreparedSolver::ExactTable { table, family, per_set, totals }
            }
            SolverKind::LocalSearch => {
                if let Err(e) = handle.validate() {
                    return PreparedSolver::Refused(e);
                }
                let size = constraint.target_size(facilities);
                let search = SwapSearch { table, facilities, matroid: memo, size };
                let init = search.initial();
                if size == 0 || init.len() != size {
                    return PreparedSolver::Refused(Error::domain(
                        "no feasible center set of positive size",
                    ));
                }
                PreparedSolver::Search { search, handle, init }
            }
        }
    }

    /// Centers (column indices) for the rows that remain after removing the
    /// sorted entry indices `excluded`.
    pub fn solve_excluding(&self, excluded: &[usize]) -> Result<Vec<usize>> {
        match self {
            PreparedSolver::Refused(e) => Err(e.clone()),
            PreparedSolver::ExactDirect { table, family } => {
                let active = mask(table.rows(), excluded);
                Ok(family[best_in_family(table, family, Some(&active)).0].clone())
            }
            PreparedSolver::ExactTable { table, family, per_set, totals } => {
                let rows = table.rows();
                let slack = (2 * rows + excluded.len() + 4) as f64 * f64::EPSILON;
                let fast: Vec<f64> = totals
                    .iter()
                    .enumerate()
                    .map(|(s, &t)| excluded.iter().fold(t, |acc, &e| acc - per_set[s * rows + e]))
                    .collect();
                let upper = fast
                    .iter()
                    .zip(totals)
                    .map(|(&f, &t)| f + slack * t)
                    .fold(f64::INFINITY, f64::min);
                let candidates: Vec<usize> = (0..family.len())
                    .filter(|&s| fast[s] - slack * totals[s] <= upper)
                    .collect();
                if let [only] = candidates[..] {
                    return Ok(family[only].clone());
                }
                // Exact re-summation in row order, as an unmasked solve would do.
                let active = mask(rows, excluded);
                let mut best = (f64::INFINITY, usize::MAX);
                for s in candidates {
                    let row_costs = &per_set[s * rows..(s + 1) * rows];
                    let cost: f64 = row_costs.iter().zip(&active).filter(|(_, &a)| a).map(|(v, _)| *v).sum();
                    if cost < best.0 || best.1 == usize::MAX {
                        best = (cost, s);
                    }
                }
                Ok(family[best.1].clone())
            }
            PreparedSolver::Search { search, handle, init } => {
                let active = mask(search.table.rows(), excluded);
                Ok(search.run_with_restarts(Some(init.clone()), Some(&active), handle).centers)
            }
        }
    }
}

fn mask(rows: usize, excluded: &[usize]) -> Vec<bool> {
    let mut active = vec![true; rows];
    for &e in excluded {
        active[e] = false;
    }
    active
}
