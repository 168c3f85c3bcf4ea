//! Random instances and brute-force references shared by the integration
//! tests. The references enumerate outlier sets explicitly instead of calling
//! the trimmed-sum code they are checking.
#![allow(dead_code)]

use std::sync::Arc;

use kmout_core::metric::{DistanceOracle, MetricInstance, PointId};
use kmout_core::{Coloring, Matroid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ids(v: &[u32]) -> Vec<PointId> {
    v.iter().map(|&i| PointId(i)).collect()
}

/// `n` points in the plane; coordinates are multiples of 0.5 in a box of
/// side `width`, so ties occur.
pub fn plane(n: usize, width: f64, rng: &mut ChaCha8Rng) -> Arc<DistanceOracle> {
    let steps = (width * 2.0) as u32;
    let coords = (0..2 * n).map(|_| f64::from(rng.random_range(0..=steps)) * 0.5).collect();
    Arc::new(DistanceOracle::euclidean(2, coords).unwrap())
}

/// Instance on `n` points where every point is a client and `f` random points
/// are facilities.
pub fn random_instance(seed: u64, n: usize, f: usize, k: usize, m: usize, z: f64) -> MetricInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = plane(n, 20.0, &mut rng);
    let clients: Vec<PointId> = (0..n).map(PointId::from).collect();
    let mut facilities = clients.clone();
    while facilities.len() > f {
        let i = rng.random_range(0..facilities.len());
        facilities.remove(i);
    }
    MetricInstance::new(oracle, clients, facilities, k, m, z).unwrap()
}

/// Clients `0..n` and separate facility points `n..n+f`.
pub fn disjoint_instance(seed: u64, n: usize, f: usize, k: usize, m: usize, z: f64) -> MetricInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = plane(n + f, 20.0, &mut rng);
    let clients = (0..n).map(PointId::from).collect();
    let facilities = (n..n + f).map(PointId::from).collect();
    MetricInstance::new(oracle, clients, facilities, k, m, z).unwrap()
}

/// Every `r`-subset of `items`.
pub fn subsets<T: Clone>(items: &[T], r: usize) -> Vec<Vec<T>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if items.len() < r {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mut rest in subsets(&items[1..], r - 1) {
        rest.insert(0, items[0].clone());
        out.push(rest);
    }
    out.extend(subsets(&items[1..], r));
    out
}

fn dpow(oracle: &DistanceOracle, p: PointId, centers: &[PointId], z: f64) -> f64 {
    let d = centers.iter().map(|&c| oracle.dist(p, c)).fold(f64::INFINITY, f64::min);
    d.powf(z)
}

/// `min_{|Y| = m} sum_{p in X \ Y} d(p, C)^z` by enumerating every `Y`.
pub fn exhaustive_trimmed(oracle: &DistanceOracle, xs: &[PointId], centers: &[PointId], m: usize, z: f64) -> f64 {
    subsets(xs, m)
        .iter()
        .map(|y| xs.iter().filter(|p| !y.contains(p)).map(|&p| dpow(oracle, p, centers, z)).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Optimal cost over center sets from `candidates` with the given scoring.
fn best_over(candidates: Vec<Vec<PointId>>, score: impl Fn(&[PointId]) -> f64) -> f64 {
    candidates.iter().map(|c| score(c)).fold(f64::INFINITY, f64::min)
}

pub fn brute_opt(inst: &MetricInstance) -> f64 {
    let r = inst.k().min(inst.facilities().len());
    best_over(subsets(inst.facilities(), r), |c| {
        exhaustive_trimmed(inst.oracle(), inst.clients(), c, inst.m(), inst.z())
    })
}

pub fn colorful_score(inst: &MetricInstance, coloring: &Coloring, centers: &[PointId]) -> f64 {
    coloring
        .classes(inst.clients())
        .iter()
        .zip(coloring.budgets())
        .map(|(class, &b)| exhaustive_trimmed(inst.oracle(), class, centers, b.min(class.len()), inst.z()))
        .sum()
}

pub fn brute_colorful(inst: &MetricInstance, coloring: &Coloring) -> f64 {
    let r = inst.k().min(inst.facilities().len());
    best_over(subsets(inst.facilities(), r), |c| colorful_score(inst, coloring, c))
}

/// Bases of `matroid` among the facilities (largest independent subsets).
pub fn bases(inst: &MetricInstance, matroid: &Matroid) -> Vec<Vec<PointId>> {
    let r = matroid.rank().min(inst.facilities().len());
    subsets(inst.facilities(), r).into_iter().filter(|c| matroid.is_independent(c)).collect()
}

pub fn brute_matroid(inst: &MetricInstance, matroid: &Matroid) -> f64 {
    best_over(bases(inst, matroid), |c| exhaustive_trimmed(inst.oracle(), inst.clients(), c, inst.m(), inst.z()))
}

pub fn brute_colorful_matroid(inst: &MetricInstance, coloring: &Coloring, matroid: &Matroid) -> f64 {
    best_over(bases(inst, matroid), |c| colorful_score(inst, coloring, c))
}

/// Relative closeness for costs computed by different summation orders.
pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}
