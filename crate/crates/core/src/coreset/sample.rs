use rand::Rng;
use serde::{Deserialize, Serialize};

use super::rings::{RingKey, RingPartition};
use crate::cost::{WeightedPoint, WeightedPointSet};
use crate::error::{Error, Result};
use crate::metric::PointId;
use crate::seed::StreamSeed;

/// The coreset part coming from one ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoresetGroup {
    pub key: RingKey,
    pub ring_size: usize,
    /// Small rings (at most `s` members) are copied verbatim.
    pub small: bool,
    /// Leading entries of `set` that are ring members copied at weight 1: the
    /// whole ring when small, the first `ring_size mod s` members otherwise.
    pub verbatim: usize,
    /// Weight of every sampled entry (0 for small rings).
    pub sample_weight: u64,
    pub set: WeightedPointSet,
}

/// A ring piece and the weighted entries standing in for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub key: RingKey,
    pub members: Vec<PointId>,
    pub entries: WeightedPointSet,
    /// Common weight of the entries.
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedCoreset {
    pub s: usize,
    pub seed: u64,
    /// One group per nonempty ring, in key order.
    pub groups: Vec<CoresetGroup>,
    /// Concatenation of the groups.
    pub union: WeightedPointSet,
    /// Group index of every union entry.
    pub provenance: Vec<usize>,
}

impl WeightedCoreset {
    pub fn size(&self) -> usize {
        self.union.len()
    }

    pub fn large_rings(&self) -> usize {
        self.groups.iter().filter(|g| !g.small).count()
    }

    pub fn is_lossless(&self) -> bool {
        self.groups.iter().all(|g| g.small)
    }

    /// Ring key of a union entry.
    pub fn entry_key(&self, entry: usize) -> RingKey {
        self.groups[self.provenance[entry]].key
    }

    /// Pieces on which the sampling guarantee is stated: each small ring, and
    /// for each large ring its verbatim part and its sampled remainder.
    pub fn cells(&self, rp: &RingPartition) -> Result<Vec<Cell>> {
        let mut cells = Vec::new();
        for g in &self.groups {
            let ring = rp.ring(g.key).ok_or_else(|| Error::domain("coreset group without a ring"))?;
            if g.small {
                cells.push(Cell { key: g.key, members: ring.members.clone(), entries: g.set.clone(), weight: 1 });
                continue;
            }
            if g.verbatim > 0 {
                cells.push(Cell {
                    key: g.key,
                    members: ring.members[..g.verbatim].to_vec(),
                    entries: WeightedPointSet { entries: g.set.entries[..g.verbatim].to_vec() },
                    weight: 1,
                });
            }
            cells.push(Cell {
                key: g.key,
                members: ring.members[g.verbatim..].to_vec(),
                entries: WeightedPointSet { entries: g.set.entries[g.verbatim..].to_vec() },
                weight: g.sample_weight,
            });
        }
        Ok(cells)
    }
}

/// `2 s (k + m) (1 + phi)` times the number of colors.
pub fn coreset_size_bound(s: usize, centers: usize, phi: u32, colors: usize) -> u128 {
    2 * s as u128 * centers as u128 * (1 + u128::from(phi)) * colors as u128
}

fn ring_seed(seed: StreamSeed, key: RingKey) -> StreamSeed {
    seed.derive("ring-center", key.center as u64)
        .derive("ring-band", u64::from(key.band))
        .derive("ring-color", key.color as u64)
}

/// Samples every large ring. A ring of size `r > s` keeps its first `r mod s`
/// members by id at weight 1 and draws `s` members of the rest uniformly with
/// replacement, each at weight `(r - r mod s) / s`; draws are sorted by id and
/// repeats stay separate entries. Each ring has its own random stream derived
/// from `seed` and the ring key.
pub fn build_coreset(rp: &RingPartition, s: usize, seed: StreamSeed) -> Result<WeightedCoreset> {
    if s == 0 {
        return Err(Error::domain("sample size s must be positive"));
    }
    let mut groups = Vec::with_capacity(rp.rings.len());
    let mut union = Vec::new();
    let mut provenance = Vec::new();
    for (gi, ring) in rp.rings.iter().enumerate() {
        let size = ring.members.len();
        let group = if size <= s {
            CoresetGroup {
                key: ring.key,
                ring_size: size,
                small: true,
                verbatim: size,
                sample_weight: 0,
                set: WeightedPointSet::unit(&ring.members),
            }
        } else {
            let verbatim = size % s;
            let rest = &ring.members[verbatim..];
            let weight = (rest.len() / s) as u64;
            let mut rng = ring_seed(seed, ring.key).rng();
            let mut drawn: Vec<PointId> = (0..s).map(|_| rest[rng.random_range(0..rest.len())]).collect();
            drawn.sort_unstable();
            let mut entries: Vec<WeightedPoint> =
                ring.members[..verbatim].iter().map(|&point| WeightedPoint { point, weight: 1 }).collect();
            entries.extend(drawn.into_iter().map(|point| WeightedPoint { point, weight }));
            CoresetGroup {
                key: ring.key,
                ring_size: size,
                small: false,
                verbatim,
                sample_weight: weight,
                set: WeightedPointSet::new(entries)?,
            }
        };
        union.extend_from_slice(&group.set.entries);
        provenance.extend(std::iter::repeat_n(gi, group.set.len()));
        groups.push(group);
    }
    Ok(WeightedCoreset { s, seed: seed.0, groups, union: WeightedPointSet { entries: union }, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coreset::ring_partition;
    use crate::metric::{DistanceOracle, MetricInstance};
    use std::sync::Arc;

    fn seven_point_ring() -> RingPartition {
        // One center at 0 with seven clients inside R.
        let xs = [0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
        let o = Arc::new(DistanceOracle::line(&xs).unwrap());
        let clients = (1..8u32).map(PointId).collect();
        let inst = MetricInstance::new(o, clients, vec![PointId(0)], 1, 0, 1.0).unwrap();
        ring_partition(&inst, &[PointId(0)], 1.0).unwrap()
    }

    #[test]
    fn split_arithmetic_for_seven_and_three() {
        let rp = seven_point_ring();
        assert_eq!(rp.rings.len(), 1);
        let c = build_coreset(&rp, 3, StreamSeed(1)).unwrap();
        let g = &c.groups[0];
        assert!(!g.small);
        assert_eq!((g.verbatim, g.sample_weight, g.set.len()), (1, 2, 4));
        assert_eq!(g.set.entries[0], WeightedPoint { point: PointId(1), weight: 1 });
        assert_eq!(g.set.total_weight(), 7);
        assert!(g.set.entries[1..].iter().all(|e| e.point.0 >= 2 && e.weight == 2));
    }

    #[test]
    fn small_rings_are_copied_and_runs_repeat() {
        let rp = seven_point_ring();
        let lossless = build_coreset(&rp, 7, StreamSeed(5)).unwrap();
        assert!(lossless.is_lossless());
        assert_eq!(lossless.union, WeightedPointSet::unit(&rp.rings[0].members));
        assert_eq!(build_coreset(&rp, 2, StreamSeed(9)).unwrap(), build_coreset(&rp, 2, StreamSeed(9)).unwrap());
        assert!(build_coreset(&rp, 0, StreamSeed(9)).is_err());
    }
}
