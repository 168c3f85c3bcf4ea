//! Matroid independence oracles over sets of [`PointId`]s.
//!
//! Provided kinds: uniform, partition, an explicit list of independent sets,
//! and the direct sum of two matroids on disjoint ground sets. The direct sum of
//! a facility matroid with a uniform matroid of rank `m` over the clients is the
//! constraint of the outlier-free baseline instance.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::PointId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionBlock {
    pub members: Vec<PointId>,
    pub capacity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Matroid {
    Uniform { ground: Vec<PointId>, rank: usize },
    Partition { blocks: Vec<PartitionBlock> },
    Explicit { ground: Vec<PointId>, independent: BTreeSet<Vec<PointId>> },
    DirectSum { left: Box<Matroid>, right: Box<Matroid> },
}

fn canonical(set: &[PointId]) -> Option<Vec<PointId>> {
    let mut v = set.to_vec();
    v.sort_unstable();
    let len = v.len();
    v.dedup();
    (v.len() == len).then_some(v)
}

impl Matroid {
    pub fn uniform(ground: &[PointId], rank: usize) -> Result<Self> {
        let ground = canonical(ground)
            .ok_or_else(|| Error::domain("uniform matroid ground set has duplicates"))?;
        Ok(Matroid::Uniform { ground, rank })
    }

    pub fn partition(blocks: Vec<PartitionBlock>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(blocks.len());
        for block in blocks {
            let members = canonical(&block.members)
                .ok_or_else(|| Error::domain("partition block has duplicates"))?;
            for &p in &members {
                if !seen.insert(p) {
                    return Err(Error::domain(format!("point {p} lies in two partition blocks")));
                }
            }
            out.push(PartitionBlock { members, capacity: block.capacity });
        }
        Ok(Matroid::Partition { blocks: out })
    }

    /// Every listed set must be drawn from `ground`.
    pub fn explicit(ground: &[PointId], sets: impl IntoIterator<Item = Vec<PointId>>) -> Result<Self> {
        let ground =
            canonical(ground).ok_or_else(|| Error::domain("explicit ground set has duplicates"))?;
        let mut independent = BTreeSet::new();
        for set in sets {
            let set = canonical(&set)
                .ok_or_else(|| Error::domain("explicit independent set has duplicates"))?;
            if let Some(p) = set.iter().find(|p| ground.binary_search(p).is_err()) {
                return Err(Error::domain(format!("point {p} is outside the ground set")));
            }
            independent.insert(set);
        }
        Ok(Matroid::Explicit { ground, independent })
    }

    pub fn direct_sum(left: Matroid, right: Matroid) -> Result<Self> {
        let l: BTreeSet<PointId> = left.ground_set().into_iter().collect();
        if let Some(p) = right.ground_set().iter().find(|p| l.contains(p)) {
            return Err(Error::domain(format!(
                "direct sum needs disjoint ground sets, point {p} is in both"
            )));
        }
        Ok(Matroid::DirectSum { left: Box::new(left), right: Box::new(right) })
    }

    /// Sorted ground set.
    pub fn ground_set(&self) -> Vec<PointId> {
        match self {
            Matroid::Uniform { ground, .. } | Matroid::Explicit { ground, .. } => ground.clone(),
            Matroid::Partition { blocks } => {
                let mut g: Vec<PointId> =
                    blocks.iter().flat_map(|b| b.members.iter().copied()).collect();
                g.sort_unstable();
                g
            }
            Matroid::DirectSum { left, right } => {
                let mut g = left.ground_set();
                g.extend(right.ground_set());
                g.sort_unstable();
                g
            }
        }
    }

    pub fn contains(&self, p: PointId) -> bool {
        match self {
            Matroid::Uniform { ground, .. } | Matroid::Explicit { ground, .. } => {
                ground.binary_search(&p).is_ok()
            }
            Matroid::Partition { blocks } => blocks.iter().any(|b| b.members.binary_search(&p).is_ok()),
            Matroid::DirectSum { left, right } => left.contains(p) || right.contains(p),
        }
    }

    /// Size of a largest independent set.
    pub fn rank(&self) -> usize {
        match self {
            Matroid::Uniform { ground, rank } => (*rank).min(ground.len()),
            Matroid::Partition { blocks } => {
                blocks.iter().map(|b| b.capacity.min(b.members.len())).sum()
            }
            Matroid::Explicit { independent, .. } => {
                independent.iter().map(Vec::len).max().unwrap_or(0)
            }
            Matroid::DirectSum { left, right } => left.rank() + right.rank(),
        }
    }

    /// Whether `set` is independent. Sets with repeated elements or elements
    /// outside the ground set are dependent.
    pub fn is_independent(&self, set: &[PointId]) -> bool {
        match canonical(set) {
            Some(set) => self.independent_sorted(&set),
            None => false,
        }
    }

    fn independent_sorted(&self, set: &[PointId]) -> bool {
        match self {
            Matroid::Uniform { ground, rank } => {
                set.len() <= *rank && set.iter().all(|p| ground.binary_search(p).is_ok())
            }
            Matroid::Partition { blocks } => {
                let mut counts = vec![0usize; blocks.len()];
                for p in set {
                    let Some(b) = blocks.iter().position(|b| b.members.binary_search(p).is_ok())
                    else {
                        return false;
                    };
                    counts[b] += 1;
                    if counts[b] > blocks[b].capacity {
                        return false;
                    }
                }
                true
            }
            Matroid::Explicit { independent, .. } => independent.contains(set),
            Matroid::DirectSum { left, right } => {
                let (l, r): (Vec<PointId>, Vec<PointId>) =
                    set.iter().partition(|&&p| left.contains(p));
                left.independent_sorted(&l) && right.independent_sorted(&r)
            }
        }
    }
}

/// The direct sum of `matroid` with a uniform matroid of rank `outliers` over
/// `clients`: a set is independent when its part inside the matroid's ground
/// set is independent and it holds at most `outliers` clients.
pub fn direct_sum_matroid(matroid: &Matroid, clients: &[PointId], outliers: usize) -> Result<Matroid> {
    Matroid::direct_sum(matroid.clone(), Matroid::uniform(clients, outliers)?)
}

/// Outcome of an exhaustive axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub ground_size: usize,
    pub independent_sets: usize,
    pub empty_independent: bool,
    pub hereditary_violations: usize,
    pub exchange_violations: usize,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.empty_independent && self.hereditary_violations == 0 && self.exchange_violations == 0
    }
}

/// Largest ground set [`check_axioms`] will enumerate.
pub const AXIOM_CHECK_MAX_GROUND: usize = 16;

/// Checks the three matroid axioms over every subset (and every pair of
/// independent subsets) of the ground set.
pub fn check_axioms(matroid: &Matroid) -> Result<AxiomReport> {
    let ground = matroid.ground_set();
    let g = ground.len();
    if g > AXIOM_CHECK_MAX_GROUND {
        return Err(Error::domain(format!(
            "ground set of {g} elements is too large for an exhaustive check"
        )));
    }
    let members = |mask: u32| -> Vec<PointId> {
        (0..g).filter(|i| mask >> i & 1 == 1).map(|i| ground[i]).collect()
    };
    let full = 1u32 << g;
    let independent: Vec<bool> = (0..full).map(|mask| matroid.is_independent(&members(mask))).collect();
    let mut report = AxiomReport {
        ground_size: g,
        independent_sets: independent.iter().filter(|&&b| b).count(),
        empty_independent: independent[0],
        hereditary_violations: 0,
        exchange_violations: 0,
    };
    for mask in (0..full).filter(|&m| independent[m as usize]) {
        for i in 0..g {
            if mask >> i & 1 == 1 && !independent[(mask & !(1 << i)) as usize] {
                report.hereditary_violations += 1;
            }
        }
    }
    for a in (0..full).filter(|&m| independent[m as usize]) {
        for b in (0..full).filter(|&m| independent[m as usize]) {
            if b.count_ones() >= a.count_ones() {
                continue;
            }
            let extendable = (0..g)
                .filter(|i| a >> i & 1 == 1 && b >> i & 1 == 0)
                .any(|i| independent[(b | 1 << i) as usize]);
            if !extendable {
                report.exchange_violations += 1;
            }
        }
    }
    Ok(report)
}

/// Caches independence queries behind a lock so that concurrent searches can
/// share one oracle.
pub struct MemoizedMatroid<'a> {
    inner: &'a Matroid,
    cache: Mutex<HashMap<Vec<PointId>, bool>>,
}

impl<'a> MemoizedMatroid<'a> {
    pub fn new(inner: &'a Matroid) -> Self {
        MemoizedMatroid { inner, cache: Mutex::new(HashMap::new()) }
    }

    pub fn matroid(&self) -> &'a Matroid {
        self.inner
    }

    pub fn is_independent(&self, set: &[PointId]) -> bool {
        let Some(key) = canonical(set) else {
            return false;
        };
        if let Some(&hit) = self.cache.lock().expect("matroid cache poisoned").get(&key) {
            return hit;
        }
        let answer = self.inner.independent_sorted(&key);
        self.cache.lock().expect("matroid cache poisoned").insert(key, answer);
        answer
    }

    pub fn cached_queries(&self) -> usize {
        self.cache.lock().expect("matroid cache poisoned").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Vec<PointId> {
        v.iter().map(|&i| PointId(i)).collect()
    }

    #[test]
    fn partition_rank_and_independence() {
        let m = Matroid::partition(vec![
            PartitionBlock { members: ids(&[0, 1]), capacity: 1 },
            PartitionBlock { members: ids(&[2, 3]), capacity: 1 },
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.is_independent(&ids(&[0, 3])));
        assert!(!m.is_independent(&ids(&[0, 1])));
        assert!(!m.is_independent(&ids(&[0, 0])));
        assert!(!m.is_independent(&ids(&[9])));
        assert!(check_axioms(&m).unwrap().holds());
    }

    #[test]
    fn direct_sum_with_clients() {
        let m = Matroid::partition(vec![
            PartitionBlock { members: ids(&[0, 1]), capacity: 1 },
            PartitionBlock { members: ids(&[2, 3]), capacity: 1 },
        ])
        .unwrap();
        let sum = direct_sum_matroid(&m, &ids(&[4, 5, 6]), 1).unwrap();
        assert_eq!(sum.rank(), 3);
        assert!(sum.is_independent(&ids(&[0, 2, 5])));
        assert!(!sum.is_independent(&ids(&[0, 4, 5])));
        assert!(check_axioms(&sum).unwrap().holds());

        let zero = direct_sum_matroid(&m, &ids(&[4, 5]), 0).unwrap();
        assert!(zero.is_independent(&ids(&[1, 3])));
        assert!(!zero.is_independent(&ids(&[1, 4])));
        assert!(direct_sum_matroid(&m, &ids(&[3, 4]), 1).is_err());
    }

    #[test]
    fn explicit_list_that_is_not_a_matroid() {
        // {0,1} without {1}: not hereditary. {0,1} vs {2}: no exchange.
        let bad = Matroid::explicit(&ids(&[0, 1, 2]), vec![vec![], ids(&[0]), ids(&[2]), ids(&[0, 1])])
            .unwrap();
        let report = check_axioms(&bad).unwrap();
        assert!(report.hereditary_violations > 0);
        assert!(report.exchange_violations > 0);
        assert!(!report.holds());
    }

    #[test]
    fn memoized_answers_match() {
        let m = Matroid::uniform(&ids(&[0, 1, 2]), 2).unwrap();
        let memo = MemoizedMatroid::new(&m);
        assert!(memo.is_independent(&ids(&[2, 0])));
        assert!(memo.is_independent(&ids(&[0, 2])));
        assert!(!memo.is_independent(&ids(&[0, 1, 2])));
        assert_eq!(memo.cached_queries(), 2);
    }
}
