//! Planted instances: Gaussian clusters plus far-away outliers.

use std::sync::Arc;

use kmout_core::{DistanceOracle, MetricInstance, PointId, StreamSeed};
use rand::seq::index::sample;
use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlantedConfig {
    pub clusters: usize,
    pub points_per_cluster: usize,
    /// Standard deviation of every coordinate around its cluster center.
    pub spread: f64,
    pub outlier_count: usize,
    /// Outliers sit at `factor * r * (1 + u)` from the origin, where `r` is
    /// the largest norm of a cluster point and `u` is uniform in `[0, 1)`.
    pub outlier_distance_factor: f64,
    pub dimension: usize,
    pub seed: u64,
    /// Size of a uniform facility subsample of all points; `None` makes every
    /// point a facility.
    pub facility_count: Option<usize>,
    /// Defaults to `clusters`.
    pub k: Option<usize>,
    /// Defaults to `outlier_count`.
    pub m: Option<usize>,
    pub z: f64,
    /// Cluster centers; drawn uniformly from `[-10, 10]^d` when absent.
    pub centers: Option<Vec<Vec<f64>>>,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            clusters: 3,
            points_per_cluster: 20,
            spread: 1.0,
            outlier_count: 2,
            outlier_distance_factor: 4.0,
            dimension: 2,
            seed: 0,
            facility_count: None,
            k: None,
            m: None,
            z: 1.0,
            centers: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Planted {
    pub instance: MetricInstance,
    /// Cluster of every point, `None` for planted outliers.
    pub labels: Vec<Option<usize>>,
}

impl Planted {
    pub fn outliers(&self) -> Vec<PointId> {
        (0..self.labels.len()).filter(|&i| self.labels[i].is_none()).map(PointId::from).collect()
    }
}

pub fn planted_instance(config: &PlantedConfig) -> anyhow::Result<Planted> {
    anyhow::ensure!(config.dimension >= 1, "dimension must be at least 1");
    anyhow::ensure!(config.spread >= 0.0 && config.spread.is_finite(), "spread must be finite and nonnegative");
    anyhow::ensure!(config.outlier_distance_factor >= 0.0, "outlier distance factor must be nonnegative");
    let d = config.dimension;
    let mut rng = StreamSeed(config.seed).derive("planted", 0).rng();

    let centers: Vec<Vec<f64>> = match &config.centers {
        Some(c) => {
            anyhow::ensure!(c.len() == config.clusters, "expected {} centers, got {}", config.clusters, c.len());
            anyhow::ensure!(c.iter().all(|x| x.len() == d), "every center needs {d} coordinates");
            c.clone()
        }
        None => (0..config.clusters).map(|_| (0..d).map(|_| rng.random_range(-10.0..10.0)).collect()).collect(),
    };
    let noise = Normal::new(0.0, config.spread)?;
    let mut coords = Vec::new();
    let mut labels = Vec::new();
    for (c, center) in centers.iter().enumerate() {
        for _ in 0..config.points_per_cluster {
            coords.extend(center.iter().map(|x| x + noise.sample(&mut rng)));
            labels.push(Some(c));
        }
    }
    let norm = |p: &[f64]| p.iter().map(|x| x * x).sum::<f64>().sqrt();
    let reach = coords.chunks(d).map(norm).fold(0.0, f64::max).max(1.0);
    for _ in 0..config.outlier_count {
        let dir: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
        let len = norm(&dir);
        let radius = config.outlier_distance_factor * reach * (1.0 + rng.random::<f64>());
        if len > 0.0 {
            coords.extend(dir.iter().map(|x| x / len * radius));
        } else {
            coords.push(radius);
            coords.extend(std::iter::repeat_n(0.0, d - 1));
        }
        labels.push(None);
    }

    let n = labels.len();
    let clients: Vec<PointId> = (0..n).map(PointId::from).collect();
    let facilities = match config.facility_count {
        Some(f) => {
            anyhow::ensure!(f <= n, "facility count {f} exceeds the {n} points");
            sample(&mut rng, n, f).into_iter().map(PointId::from).collect()
        }
        None => clients.clone(),
    };
    let oracle = Arc::new(DistanceOracle::euclidean(d, coords)?);
    let k = config.k.unwrap_or(config.clusters);
    let m = config.m.unwrap_or(config.outlier_count);
    let instance = MetricInstance::new(oracle, clients, facilities, k, m, config.z)?;
    Ok(Planted { instance, labels })
}
