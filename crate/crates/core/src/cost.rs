//! Outlier-trimmed clustering costs.
//!
//! Every cost here is `summ`: drop the `m` largest values of a multiset and add
//! up the rest. The dropped elements are chosen by value descending with the
//! higher index evicted first among equal values, and the survivors are summed
//! in input order. `cost_m` and `farthest_m` share that rule, so removing the
//! reported outliers and summing what is left reproduces `cost_m` bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{DistanceOracle, PointId};

/// `d^z`, with the common exponents computed without `powf`.
#[inline]
pub fn pow_z(d: f64, z: f64) -> f64 {
    if z == 1.0 {
        d
    } else if z == 2.0 {
        d * d
    } else {
        d.powf(z)
    }
}

/// Positions of the `m` elements removed by `summ`, most expensive first.
fn dropped_positions(values: &[f64], m: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by(|&a, &b| values[b].total_cmp(&values[a]).then(b.cmp(&a)));
    order.truncate(m);
    order
}

/// Sum of the `|values| - m` smallest values, repetitions counted.
pub fn summ(values: &[f64], m: usize) -> Result<f64> {
    if m > values.len() {
        return Err(Error::domain(format!(
            "cannot drop {m} values from a multiset of {}",
            values.len()
        )));
    }
    if m == 0 {
        return Ok(values.iter().sum());
    }
    let mut keep = vec![true; values.len()];
    for pos in dropped_positions(values, m) {
        keep[pos] = false;
    }
    Ok(values.iter().zip(&keep).filter(|(_, &k)| k).map(|(v, _)| *v).sum())
}

/// Distance from `p` to the nearest point of `centers` (infinite when empty).
#[inline]
pub fn dist_to_set(oracle: &DistanceOracle, p: PointId, centers: &[PointId]) -> f64 {
    centers.iter().map(|&c| oracle.dist(p, c)).fold(f64::INFINITY, f64::min)
}

/// Index (into `centers`) and distance of the nearest center; the lowest index
/// wins ties.
pub fn nearest_center(oracle: &DistanceOracle, p: PointId, centers: &[PointId]) -> (usize, f64) {
    let mut best = (usize::MAX, f64::INFINITY);
    for (i, &c) in centers.iter().enumerate() {
        let d = oracle.dist(p, c);
        if d < best.1 || best.0 == usize::MAX {
            best = (i, d);
        }
    }
    best
}

fn require_centers(centers: &[PointId]) -> Result<()> {
    if centers.is_empty() {
        return Err(Error::domain("center set is empty"));
    }
    Ok(())
}

/// Per-point costs `d(p, C)^z` in the order of `points`.
pub fn point_costs(oracle: &DistanceOracle, points: &[PointId], centers: &[PointId], z: f64) -> Vec<f64> {
    points.iter().map(|&p| pow_z(dist_to_set(oracle, p, centers), z)).collect()
}

/// `cost_m(X, C)`: the sum of `d(p, C)^z` over all but the `m` most expensive
/// points of `X`.
pub fn cost_m(
    oracle: &DistanceOracle,
    points: &[PointId],
    centers: &[PointId],
    m: usize,
    z: f64,
) -> Result<f64> {
    require_centers(centers)?;
    summ(&point_costs(oracle, points, centers, z), m)
}

/// The `m` points whose removal realizes `cost_m`, ordered by cost descending
/// and then by id ascending.
pub fn farthest_m(
    oracle: &DistanceOracle,
    points: &[PointId],
    centers: &[PointId],
    m: usize,
    z: f64,
) -> Result<Vec<PointId>> {
    require_centers(centers)?;
    if m > points.len() {
        return Err(Error::domain(format!("cannot pick {m} outliers from {} points", points.len())));
    }
    let costs = point_costs(oracle, points, centers, z);
    let mut picked: Vec<(f64, PointId)> = dropped_positions(&costs, m)
        .into_iter()
        .map(|pos| (costs[pos], points[pos]))
        .collect();
    picked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(picked.into_iter().map(|(_, p)| p).collect())
}

/// A point carrying a positive integer weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub point: PointId,
    pub weight: u64,
}

/// A list of weighted points. The same point may appear in several entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPointSet {
    pub entries: Vec<WeightedPoint>,
}

impl WeightedPointSet {
    pub fn new(entries: Vec<WeightedPoint>) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.weight == 0) {
            return Err(Error::domain(format!("point {} has weight 0", e.point)));
        }
        Ok(WeightedPointSet { entries })
    }

    pub fn unit(points: &[PointId]) -> Self {
        WeightedPointSet {
            entries: points.iter().map(|&point| WeightedPoint { point, weight: 1 }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_weight(&self) -> u64 {
        self.entries.iter().map(|e| e.weight).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        self.entries.iter().map(|e| e.point)
    }
}

/// Weighted cost with `t` dropped entries. Each entry contributes the single
/// value `d(p, C)^z * w(p)`, dropped or kept as a whole.
pub fn wcost_t(
    oracle: &DistanceOracle,
    set: &WeightedPointSet,
    centers: &[PointId],
    t: usize,
    z: f64,
) -> Result<f64> {
    require_centers(centers)?;
    let values: Vec<f64> = set
        .entries
        .iter()
        .map(|e| pow_z(dist_to_set(oracle, e.point, centers), z) * e.weight as f64)
        .collect();
    summ(&values, t)
}

/// Largest pairwise distance in a nonempty set.
pub fn diam(oracle: &DistanceOracle, set: &[PointId]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::domain("diameter of an empty set"));
    }
    let mut best = 0.0f64;
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            best = best.max(oracle.dist(a, b));
        }
    }
    Ok(best)
}

/// Smallest distance between a point of `set` and a point of `centers`.
pub fn set_dist(oracle: &DistanceOracle, set: &[PointId], centers: &[PointId]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::domain("distance from an empty set"));
    }
    require_centers(centers)?;
    Ok(set.iter().map(|&p| dist_to_set(oracle, p, centers)).fold(f64::INFINITY, f64::min))
}

/// Which enumerated outlier subset produced a solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateTag {
    /// Brute-force enumeration over center sets.
    Oracle,
    /// Solved without the reduction.
    Direct,
    /// Coreset entries removed in the given round.
    Subset { round: usize, entries: Vec<usize> },
}

/// Centers, outliers and the outlier-trimmed cost they achieve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub centers: Vec<PointId>,
    pub outliers: Vec<PointId>,
    pub cost: f64,
    pub candidate_tag: CandidateTag,
}
