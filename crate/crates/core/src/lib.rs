//! k-median and `(k, z)`-clustering with outliers.
//!
//! The solver reduces the problem with `m` outliers to many outlier-free
//! problems: a weighted ring coreset `S` is sampled around a `(k+m)`-center
//! baseline, every subset `T` of at most `m` coreset entries is removed in
//! turn, an outlier-free solver runs on `S \ T`, and the best center set on the
//! original input wins. Exact brute-force oracles, colorful budgets and matroid
//! constraints are included.
//!
//! ```
//! use std::sync::Arc;
//! use kmout_core::{solve_with_outliers, CoresetParams, DistanceOracle, MetricInstance, ReductionConfig};
//!
//! let oracle = Arc::new(DistanceOracle::line(&[0.0, 1.0, 2.0, 10.0, 11.0, 90.0]).unwrap());
//! let inst = MetricInstance::all_points(oracle, 2, 1, 1.0).unwrap();
//! let config = ReductionConfig { coreset: CoresetParams::practical(16), rounds: 1, ..Default::default() };
//! let report = solve_with_outliers(&inst, &config).unwrap();
//! assert_eq!(report.best.cost, 3.0);
//! ```

pub mod coreset;
pub mod cost;
pub mod error;
pub mod extensions;
pub mod metric;
pub mod objective;
pub mod reduction;
pub mod seed;
pub mod solvers;

pub use coreset::{CoresetParams, RingPartition, WeightedCoreset};
pub use cost::{cost_m, farthest_m, summ, wcost_t, CandidateTag, Solution, WeightedPoint, WeightedPointSet};
pub use error::{Error, Result};
pub use extensions::colorful::{Coloring, ColorfulInstance};
pub use extensions::matroid::Matroid;
pub use metric::{DistanceOracle, MetricInstance, PointId};
pub use objective::Objective;
pub use reduction::{coreset_snapshot, evaluate_candidate, solve_with_outliers, CoresetSnapshot, ReductionConfig, ReductionReport};
pub use seed::StreamSeed;
pub use solvers::{SolverHandle, SolverKind};
