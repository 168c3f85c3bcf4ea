//! Experiment suites: run the reduction and the exact oracle on a list of
//! instances and compare the two costs.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use kmout_core::solvers::exact_outlier_oracle;
use kmout_core::{evaluate_candidate, solve_with_outliers, MetricInstance, ReductionConfig, StreamSeed};
use serde::{Deserialize, Serialize};

use crate::format::read_instance;
use crate::generate::{planted_instance, PlantedConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSource {
    Planted(PlantedConfig),
    /// An instance file, relative to the suite file.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub id: String,
    pub source: InstanceSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    /// Every ratio must be at most this, when set.
    pub max_ratio: Option<f64>,
    pub success_ratio: f64,
    /// Fraction of instances that must reach `success_ratio`.
    pub success_fraction: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { max_ratio: None, success_ratio: 3.0, success_fraction: 0.9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: Vec<InstanceSpec>,
    /// Its `seed` is replaced per instance.
    pub reduction: ReductionConfig,
    pub oracle_budget: u64,
    pub thresholds: Thresholds,
    pub record_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            instances: Vec::new(),
            reduction: ReductionConfig::default(),
            oracle_budget: 1_000_000,
            thresholds: Thresholds::default(),
            record_timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub id: String,
    pub clients: usize,
    pub facilities: usize,
    pub k: usize,
    pub m: usize,
    pub z: f64,
    pub seed: u64,
    pub oracle_cost: f64,
    pub framework_cost: f64,
    /// `framework / oracle`; `None` when the oracle cost is zero and the
    /// framework's is not.
    pub ratio: Option<f64>,
    pub rounds: usize,
    pub sample_size: usize,
    pub candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub instances: usize,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub success_fraction: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
    pub summary: ExperimentSummary,
}

pub fn cost_ratio(framework: f64, oracle: f64) -> Option<f64> {
    if oracle > 0.0 {
        Some(framework / oracle)
    } else if framework == 0.0 {
        Some(1.0)
    } else {
        None
    }
}

fn load(spec: &InstanceSpec, base_dir: &Path) -> anyhow::Result<MetricInstance> {
    match &spec.source {
        InstanceSource::Planted(p) => Ok(planted_instance(p)?.instance),
        InstanceSource::File(path) => {
            let path = base_dir.join(path);
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            read_instance(&text).with_context(|| format!("parsing {}", path.display()))
        }
    }
}

pub fn run_instance(
    spec: &InstanceSpec,
    inst: &MetricInstance,
    suite: &SuiteConfig,
    index: usize,
) -> anyhow::Result<ExperimentRow> {
    let seed = StreamSeed(suite.seed).derive("experiment-instance", index as u64).0;
    let config = ReductionConfig { seed, ..suite.reduction.clone() };
    let start = Instant::now();
    let report = solve_with_outliers(inst, &config).with_context(|| format!("instance {}", spec.id))?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (framework_cost, _) = evaluate_candidate(inst, &report.best.centers)?;
    let oracle = exact_outlier_oracle(inst, suite.oracle_budget).with_context(|| format!("oracle on {}", spec.id))?;
    Ok(ExperimentRow {
        id: spec.id.clone(),
        clients: inst.clients().len(),
        facilities: inst.facilities().len(),
        k: inst.k(),
        m: inst.m(),
        z: inst.z(),
        seed,
        oracle_cost: oracle.cost,
        framework_cost,
        ratio: cost_ratio(framework_cost, oracle.cost),
        rounds: report.rounds,
        sample_size: report.sample_size,
        candidates: report.candidates_evaluated,
        wall_ms: suite.record_timing.then_some(wall_ms),
    })
}

pub fn summarize(rows: &[ExperimentRow], thresholds: &Thresholds) -> ExperimentSummary {
    let n = rows.len();
    let finite: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    let all_finite = finite.len() == n;
    let mean_ratio = (all_finite && n > 0).then(|| finite.iter().sum::<f64>() / n as f64);
    let max_ratio = if all_finite { finite.iter().copied().reduce(f64::max) } else { None };
    let successes = finite.iter().filter(|&&r| r <= thresholds.success_ratio).count();
    let success_fraction = if n == 0 { 1.0 } else { successes as f64 / n as f64 };
    let under_max = match thresholds.max_ratio {
        Some(cap) => all_finite && finite.iter().all(|&r| r <= cap),
        None => true,
    };
    ExperimentSummary {
        instances: n,
        mean_ratio,
        max_ratio,
        success_fraction,
        passed: under_max && success_fraction >= thresholds.success_fraction,
    }
}

/// Runs every instance of the suite; file sources are resolved against
/// `base_dir`. Rows are sorted by instance id.
pub fn run_suite(suite: &SuiteConfig, base_dir: &Path) -> anyhow::Result<ExperimentReport> {
    let mut rows = Vec::with_capacity(suite.instances.len());
    for (index, spec) in suite.instances.iter().enumerate() {
        let inst = load(spec, base_dir)?;
        rows.push(run_instance(spec, &inst, suite, index)?);
    }
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    let summary = summarize(&rows, &suite.thresholds);
    Ok(ExperimentReport { rows, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_oracle_cost() {
        assert_eq!(cost_ratio(0.0, 0.0), Some(1.0));
        assert_eq!(cost_ratio(1.0, 0.0), None);
        assert_eq!(cost_ratio(3.0, 2.0), Some(1.5));
    }

    #[test]
    fn infinite_ratio_fails_a_cap() {
        let row = |ratio| ExperimentRow {
            id: String::new(),
            clients: 1,
            facilities: 1,
            k: 1,
            m: 0,
            z: 1.0,
            seed: 0,
            oracle_cost: 0.0,
            framework_cost: 0.0,
            ratio,
            rounds: 1,
            sample_size: 1,
            candidates: 1,
            wall_ms: None,
        };
        let t = Thresholds { max_ratio: Some(2.0), success_ratio: 2.0, success_fraction: 0.5 };
        assert!(summarize(&[row(Some(1.0)), row(Some(1.5))], &t).passed);
        assert!(!summarize(&[row(Some(1.0)), row(None)], &t).passed);
    }
}
