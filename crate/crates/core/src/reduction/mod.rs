//! The reduction from clustering with outliers to clustering without them.
//!
//! Per round: sample a coreset `S` from the rings, then for every subset `T`
//! of at most `m` coreset entries solve the outlier-free problem on `S \ T`.
//! Every center set obtained this way is scored on the original instance and
//! the cheapest one wins. The baseline and the rings are deterministic and
//! computed once; rounds differ only in the sampling stream.

mod enumerate;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coreset::{
    baseline_solve_constrained, build_augmented_instance, build_coreset, coreset_size_bound, ring_partition,
    ring_partition_colored, BaselineConfig, BaselineResult, CoresetParams, RingPartition, WeightedCoreset,
};
use crate::cost::{CandidateTag, Solution};
use crate::error::{Error, Result};
use crate::extensions::colorful::Coloring;
use crate::extensions::matroid::{direct_sum_matroid, Matroid, MemoizedMatroid};
use crate::metric::{MetricInstance, PointId};
use crate::objective::Objective;
use crate::seed::StreamSeed;
use crate::solvers::{CenterConstraint, CostTable, Guarantee, PreparedSolver, SolverHandle};

pub use enumerate::{subset_count, OutlierSubsets};

/// Everything the reduction needs besides the instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReductionConfig {
    pub coreset: CoresetParams,
    pub solver: SolverHandle,
    pub baseline: BaselineConfig,
    pub rounds: usize,
    pub seed: u64,
    /// Skip subsets that only swap identical coreset entries.
    pub prune_symmetric: bool,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            coreset: CoresetParams::default(),
            solver: SolverHandle::exact(),
            baseline: BaselineConfig::default(),
            rounds: default_rounds(0.05),
            seed: 0,
            prune_symmetric: false,
        }
    }
}

/// `ceil(log2(1 / fail))` rounds.
pub fn default_rounds(fail: f64) -> usize {
    (1.0 / fail).log2().ceil().max(1.0) as usize
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundSummary {
    pub round: usize,
    pub seed: u64,
    pub coreset_size: usize,
    pub large_rings: usize,
    pub candidates: usize,
    pub best_cost: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    /// Subsets `T` for which the black box returned centers.
    pub candidates_evaluated: usize,
    /// Subsets `T` the black box refused.
    pub candidates_skipped: usize,
    /// Distinct center sets scored on the original instance, summed over rounds.
    pub distinct_center_sets: usize,
    pub best: Solution,
    pub per_round: Vec<RoundSummary>,
    pub rounds: usize,
    pub sample_size: usize,
    pub baseline: BaselineResult,
    /// Baseline factor used for the ring radius.
    pub tau: f64,
    pub radius: f64,
    pub phi: u32,
    pub rings: usize,
    pub beta: Guarantee,
    /// `(1 + epsilon) / (1 - epsilon)`, the factor by which the coreset may
    /// distort the black box's guarantee.
    pub approximation_factor: f64,
    pub warnings: Vec<String>,
}

/// The problem solved by [`run`]: an instance, how center sets are scored, and
/// which center sets are allowed.
pub(crate) struct Problem<'a> {
    pub inst: &'a MetricInstance,
    pub objective: Objective<'a>,
    pub matroid: Option<&'a Matroid>,
}

impl Problem<'_> {
    fn constraint(&self) -> CenterConstraint<'_> {
        match self.matroid {
            Some(m) => CenterConstraint::Matroid(m),
            None => CenterConstraint::Cardinality(self.inst.k()),
        }
    }

    fn k(&self) -> usize {
        match self.matroid {
            Some(m) => m.rank(),
            None => self.inst.k(),
        }
    }
}

/// Clustering with outliers through the coreset reduction.
pub fn solve_with_outliers(inst: &MetricInstance, config: &ReductionConfig) -> Result<ReductionReport> {
    run(&Problem { inst, objective: Objective::Trimmed, matroid: None }, config)
}

/// Cost of `centers` on the instance and the farthest-`m` outliers.
pub fn evaluate_candidate(inst: &MetricInstance, centers: &[PointId]) -> Result<(f64, Vec<PointId>)> {
    Objective::Trimmed.evaluate(inst, centers)
}

/// The coreset sampled in one round of the reduction, with the baseline and
/// rings it was built from.
#[derive(Debug, Clone)]
pub struct CoresetSnapshot {
    pub baseline: BaselineResult,
    pub tau: f64,
    pub rings: RingPartition,
    pub s: usize,
    pub seed: u64,
    pub coreset: WeightedCoreset,
}

/// Rebuilds the coreset that `solve_with_outliers` (or, with a coloring,
/// `colorful_solve`) samples in round `round`.
pub fn coreset_snapshot(
    inst: &MetricInstance,
    coloring: Option<&Coloring>,
    config: &ReductionConfig,
    round: usize,
) -> Result<CoresetSnapshot> {
    let objective = match coloring {
        Some(c) => Objective::Colorful(c),
        None => Objective::Trimmed,
    };
    let problem = Problem { inst, objective, matroid: None };
    let prepared = prepare(&problem, config)?;
    let s = config.coreset.sample_size(inst.clients().len(), inst.k(), inst.m(), inst.z(), prepared.tau)?;
    let seed = StreamSeed(config.seed).derive("round", round as u64);
    let coreset = build_coreset(&prepared.rings, s, seed)?;
    Ok(CoresetSnapshot { baseline: prepared.baseline, tau: prepared.tau, rings: prepared.rings, s, seed: seed.0, coreset })
}

/// Baseline and rings; shared by all rounds.
pub(crate) struct Prepared {
    pub baseline: BaselineResult,
    pub tau: f64,
    pub rings: RingPartition,
}

pub(crate) fn prepare(problem: &Problem<'_>, config: &ReductionConfig) -> Result<Prepared> {
    let inst = problem.inst;
    config.coreset.validate()?;
    let aug = build_augmented_instance(inst)?;
    let baseline = match problem.matroid {
        Some(m) => {
            let extended = direct_sum_matroid(m, inst.clients(), inst.m())?;
            baseline_solve_constrained(&aug, CenterConstraint::Matroid(&extended), &config.baseline)?
        }
        None => baseline_solve_constrained(&aug, CenterConstraint::Cardinality(aug.k()), &config.baseline)?,
    };
    let tau = baseline.guarantee.factor().unwrap_or(config.coreset.tau);
    let rings = match problem.objective.coloring() {
        Some(c) => ring_partition_colored(inst, &baseline.centers, tau, c)?,
        None => ring_partition(inst, &baseline.centers, tau)?,
    };
    Ok(Prepared { baseline, tau, rings })
}

struct RoundBest {
    cost: f64,
    centers: Vec<PointId>,
    outliers: Vec<PointId>,
    subset: Vec<usize>,
}

/// Cost, centers and outliers of one candidate on the original instance.
type Scored = (f64, Vec<PointId>, Vec<PointId>);

/// Subsets handed to the worker pool at a time.
const CHUNK: usize = 4096;

pub(crate) fn run(problem: &Problem<'_>, config: &ReductionConfig) -> Result<ReductionReport> {
    if config.rounds == 0 {
        return Err(Error::domain("rounds must be at least 1"));
    }
    let inst = problem.inst;
    let prepared = prepare(problem, config)?;
    let rp = &prepared.rings;
    let k = problem.k();
    let m = inst.m();
    let s = config.coreset.sample_size(inst.clients().len(), k, m, inst.z(), prepared.tau)?;
    let mut warnings = Vec::new();
    if !prepared.baseline.converged {
        warnings.push("baseline local search hit its iteration cap".to_string());
    }

    let facilities = inst.facilities();
    let constraint = problem.constraint();
    let memo = problem.matroid.map(MemoizedMatroid::new);
    let mut per_round = Vec::with_capacity(config.rounds);
    let mut best: Option<(RoundBest, usize)> = None;
    let (mut evaluated, mut skipped, mut distinct) = (0, 0, 0);
    let mut first_refusal: Option<Error> = None;

    for round in 0..config.rounds {
        let seed = StreamSeed(config.seed).derive("round", round as u64);
        let coreset = build_coreset(rp, s, seed)?;
        let bound = coreset_size_bound(s, k + m, rp.phi, rp.colors());
        if coreset.size() as u128 > bound {
            warnings.push(format!("round {round}: coreset size {} exceeds {bound}", coreset.size()));
        }
        let outcome = solve_round(problem, config, &coreset, facilities, constraint, memo.as_ref())?;
        evaluated += outcome.evaluated;
        skipped += outcome.skipped;
        distinct += outcome.distinct;
        if first_refusal.is_none() {
            first_refusal = outcome.refusal;
        }
        per_round.push(RoundSummary {
            round,
            seed: seed.0,
            coreset_size: coreset.size(),
            large_rings: coreset.large_rings(),
            candidates: outcome.evaluated,
            best_cost: outcome.best.as_ref().map(|b| b.cost),
        });
        if let Some(candidate) = outcome.best {
            if best.as_ref().is_none_or(|(b, _)| candidate.cost < b.cost) {
                best = Some((candidate, round));
            }
        }
    }

    if skipped > 0 {
        let reason = first_refusal.map(|e| e.to_string()).unwrap_or_default();
        warnings.push(format!("{skipped} subsets refused by the black box: {reason}"));
    }
    let Some((b, round)) = best else {
        return Err(Error::AllCandidatesRefused { refused: skipped });
    };
    let eps = config.coreset.epsilon;
    Ok(ReductionReport {
        candidates_evaluated: evaluated,
        candidates_skipped: skipped,
        distinct_center_sets: distinct,
        best: Solution {
            centers: b.centers,
            outliers: b.outliers,
            cost: b.cost,
            candidate_tag: CandidateTag::Subset { round, entries: b.subset },
        },
        per_round,
        rounds: config.rounds,
        sample_size: s,
        baseline: prepared.baseline.clone(),
        tau: prepared.tau,
        radius: rp.radius,
        phi: rp.phi,
        rings: rp.rings.len(),
        beta: config.solver.beta_guarantee(inst.z(), problem.matroid.is_some()),
        approximation_factor: (1.0 + eps) / (1.0 - eps),
        warnings,
    })
}

struct RoundOutcome {
    evaluated: usize,
    skipped: usize,
    distinct: usize,
    refusal: Option<Error>,
    best: Option<RoundBest>,
}

fn solve_round(
    problem: &Problem<'_>,
    config: &ReductionConfig,
    coreset: &WeightedCoreset,
    facilities: &[PointId],
    constraint: CenterConstraint<'_>,
    memo: Option<&MemoizedMatroid<'_>>,
) -> Result<RoundOutcome> {
    let inst = problem.inst;
    let table = CostTable::build(inst.oracle(), &coreset.union, facilities, inst.z());
    let solver = PreparedSolver::new(&table, facilities, constraint, memo, &config.solver);

    let mut subsets = OutlierSubsets::new(coreset.size(), inst.m());
    if let Some(coloring) = problem.objective.coloring() {
        let classes = (0..coreset.size()).map(|e| coreset.entry_key(e).color).collect();
        subsets = subsets.with_class_caps(classes, coloring.budgets().to_vec());
    }
    if config.prune_symmetric {
        subsets = subsets.with_symmetry(&coreset.union.entries);
    }

    // First subset (by enumeration index) producing each center set.
    let mut found: BTreeMap<Vec<usize>, (usize, Vec<usize>)> = BTreeMap::new();
    let (mut evaluated, mut skipped) = (0, 0);
    let mut refusal = None;
    let mut index = 0;
    loop {
        let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let answers: Vec<Result<Vec<usize>>> = chunk.par_iter().map(|t| solver.solve_excluding(t)).collect();
        for (t, answer) in chunk.into_iter().zip(answers) {
            match answer {
                Ok(cols) => {
                    evaluated += 1;
                    found.entry(cols).or_insert((index, t));
                }
                Err(e) => {
                    skipped += 1;
                    refusal.get_or_insert(e);
                }
            }
            index += 1;
        }
    }

    let mut candidates: Vec<(usize, Vec<usize>, Vec<usize>)> =
        found.into_iter().map(|(cols, (i, t))| (i, cols, t)).collect();
    candidates.sort_unstable_by_key(|c| c.0);
    let scored: Vec<Option<Scored>> = candidates
        .par_iter()
        .map(|(_, cols, _)| {
            let centers: Vec<PointId> = cols.iter().map(|&c| facilities[c]).collect();
            if !constraint.allows(&centers) {
                return Ok(None);
            }
            let (cost, outliers) = problem.objective.evaluate(inst, &centers)?;
            Ok(Some((cost, centers, outliers)))
        })
        .collect::<Result<_>>()?;
    let mut best: Option<RoundBest> = None;
    for ((_, _, subset), score) in candidates.iter().zip(scored) {
        let Some((cost, centers, outliers)) = score else {
            continue;
        };
        if best.as_ref().is_none_or(|b| cost < b.cost) {
            best = Some(RoundBest { cost, centers, outliers, subset: subset.clone() });
        }
    }
    Ok(RoundOutcome { evaluated, skipped, distinct: candidates.len(), refusal, best })
}
