use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cost::{cost_m, diam, nearest_center, pow_z};
use crate::error::{Error, Result};
use crate::extensions::colorful::Coloring;
use crate::metric::{DistanceOracle, MetricInstance, PointId};

/// Identifies a ring: baseline center index, distance band, and color (0 when
/// the instance is uncolored).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RingKey {
    pub center: usize,
    pub band: u32,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ring {
    pub key: RingKey,
    /// Sorted by id.
    pub members: Vec<PointId>,
}

/// Clients grouped by nearest baseline center and distance band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingPartition {
    pub baseline: Vec<PointId>,
    /// `cost_0(X, A)`.
    pub baseline_cost: f64,
    /// `R = (cost_0(X, A) / (tau n))^(1/z)`.
    pub radius: f64,
    /// `ceil(log2(tau n))`; no client lies beyond band `phi`.
    pub phi: u32,
    pub tau: f64,
    pub z: f64,
    /// Number of clients.
    pub n: usize,
    /// Nonempty rings in key order.
    pub rings: Vec<Ring>,
    /// Nearest baseline center index of each client, in client order.
    pub assignment: Vec<(PointId, usize)>,
}

impl RingPartition {
    pub fn max_ring_size(&self) -> usize {
        self.rings.iter().map(|r| r.members.len()).max().unwrap_or(0)
    }

    pub fn ring(&self, key: RingKey) -> Option<&Ring> {
        self.rings.binary_search_by(|r| r.key.cmp(&key)).ok().map(|i| &self.rings[i])
    }

    /// Number of colors the rings were split by.
    pub fn colors(&self) -> usize {
        self.rings.iter().map(|r| r.key.color + 1).max().unwrap_or(1)
    }
}

/// Smallest `phi >= 0` with `2^phi >= x`.
pub fn ceil_log2(x: f64) -> u32 {
    let mut phi = if x > 1.0 { x.log2().ceil().max(0.0) as u32 } else { 0 };
    while f64::from(phi).exp2() < x {
        phi += 1;
    }
    while phi > 0 && f64::from(phi - 1).exp2() >= x {
        phi -= 1;
    }
    phi
}

/// Band of a client at distance `d`: 0 when `d <= R`, otherwise the `j` with
/// `2^(j-1) R < d <= 2^j R`, capped at `phi`.
fn band(d: f64, radius: f64, phi: u32) -> u32 {
    if d <= radius || radius == 0.0 {
        return 0;
    }
    let mut j = 1;
    let mut upper = 2.0 * radius;
    while d > upper && j < phi {
        upper *= 2.0;
        j += 1;
    }
    j
}

/// Rings of `inst`'s clients around the baseline centers.
pub fn ring_partition(inst: &MetricInstance, baseline: &[PointId], tau: f64) -> Result<RingPartition> {
    partition(inst, baseline, tau, None)
}

/// Rings split further by color, one ring per (center, band, color).
pub fn ring_partition_colored(
    inst: &MetricInstance,
    baseline: &[PointId],
    tau: f64,
    coloring: &Coloring,
) -> Result<RingPartition> {
    partition(inst, baseline, tau, Some(coloring))
}

fn partition(
    inst: &MetricInstance,
    baseline: &[PointId],
    tau: f64,
    coloring: Option<&Coloring>,
) -> Result<RingPartition> {
    if baseline.is_empty() {
        return Err(Error::domain("baseline center set is empty"));
    }
    if !(tau >= 1.0 && tau.is_finite()) {
        return Err(Error::domain(format!("tau = {tau} must be a finite real >= 1")));
    }
    let (oracle, z) = (inst.oracle(), inst.z());
    let n = inst.clients().len();
    let baseline_cost = cost_m(oracle, inst.clients(), baseline, 0, z)?;
    let scale = tau * n as f64;
    let radius = if baseline_cost == 0.0 { 0.0 } else { (baseline_cost / scale).powf(1.0 / z) };
    let phi = ceil_log2(scale);
    let mut rings: BTreeMap<RingKey, Vec<PointId>> = BTreeMap::new();
    let mut assignment = Vec::with_capacity(n);
    for &p in inst.clients() {
        let (center, d) = nearest_center(oracle, p, baseline);
        let color = match coloring {
            Some(c) => c.color_of(p).ok_or_else(|| Error::domain(format!("client {p} has no color")))?,
            None => 0,
        };
        let key = RingKey { center, band: band(d, radius, phi), color };
        rings.entry(key).or_default().push(p);
        assignment.push((p, center));
    }
    Ok(RingPartition {
        baseline: baseline.to_vec(),
        baseline_cost,
        radius,
        phi,
        tau,
        z,
        n,
        rings: rings.into_iter().map(|(key, members)| Ring { key, members }).collect(),
        assignment,
    })
}

/// Both ring sums next to their bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingBoundsReport {
    /// `sum |X_ij| (2^j R)^z`.
    pub radius_sum: f64,
    /// `(1 + 2^z) cost_0(X, A)`.
    pub radius_bound: f64,
    /// `sum |X_ij| diam(X_ij)^z`.
    pub diameter_sum: f64,
    /// `2^z (1 + 2^z) cost_0(X, A)`.
    pub diameter_bound: f64,
    pub passed: bool,
}

/// Relative slack for rounding in `R` and in the sums; the inequalities are
/// exact over the reals.
const BOUND_SLACK: f64 = 1e-12;

pub fn verify_ring_bounds(rp: &RingPartition, oracle: &DistanceOracle) -> Result<RingBoundsReport> {
    let mut radius_sum = 0.0;
    let mut diameter_sum = 0.0;
    for ring in &rp.rings {
        let size = ring.members.len() as f64;
        let outer = rp.radius * f64::from(ring.key.band).exp2();
        radius_sum += size * pow_z(outer, rp.z);
        diameter_sum += size * pow_z(diam(oracle, &ring.members)?, rp.z);
    }
    let factor = 1.0 + rp.z.exp2();
    let radius_bound = factor * rp.baseline_cost;
    let diameter_bound = rp.z.exp2() * factor * rp.baseline_cost;
    let passed = radius_sum <= radius_bound * (1.0 + BOUND_SLACK)
        && diameter_sum <= diameter_bound * (1.0 + BOUND_SLACK);
    Ok(RingBoundsReport { radius_sum, radius_bound, diameter_sum, diameter_bound, passed })
}
