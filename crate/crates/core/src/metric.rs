//! Distance oracles and the clustering instance.
//!
//! Two oracle backends share one interface: an explicit symmetric matrix and
//! Euclidean coordinates with distances computed on demand. Points are named by
//! [`PointId`], an index into the oracle's universe. Clients and facilities are
//! lists of ids over the same universe, so a client and a facility may coincide.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a point inside a distance oracle's universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub u32);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for PointId {
    fn from(value: usize) -> Self {
        PointId(u32::try_from(value).expect("point index exceeds u32"))
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Relative slack used when checking the triangle inequality on a matrix.
const TRIANGLE_SLACK: f64 = 1e-9;

/// Number of triples checked exhaustively before switching to a strided sample.
const TRIANGLE_EXHAUSTIVE_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum DistanceOracle {
    /// Full `n x n` row-major matrix.
    Matrix { n: usize, values: Vec<f64> },
    /// `n` points of dimension `dim`, row-major coordinates.
    Euclidean { dim: usize, coords: Vec<f64> },
}

impl DistanceOracle {
    /// Builds a matrix oracle from a lower-triangular listing: row `i` holds
    /// `d(i, 0), ..., d(i, i)`.
    pub fn from_lower_triangular(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut values = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::instance(format!(
                    "row {i} of the lower-triangular matrix has {} entries, expected {}",
                    row.len(),
                    i + 1
                )));
            }
            for (j, &d) in row.iter().enumerate() {
                values[i * n + j] = d;
                values[j * n + i] = d;
            }
        }
        let oracle = DistanceOracle::Matrix { n, values };
        oracle.check_metric()?;
        Ok(oracle)
    }

    /// Builds a matrix oracle from a full matrix, which must be symmetric.
    pub fn from_matrix(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::instance(format!(
                "matrix has {} entries, expected {}",
                values.len(),
                n * n
            )));
        }
        let oracle = DistanceOracle::Matrix { n, values };
        oracle.check_metric()?;
        Ok(oracle)
    }

    pub fn euclidean(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::instance("dimension must be positive"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::instance(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::instance("non-finite coordinate"));
        }
        Ok(DistanceOracle::Euclidean { dim, coords })
    }

    /// Convenience constructor for points on the real line.
    pub fn line(coords: &[f64]) -> Result<Self> {
        Self::euclidean(1, coords.to_vec())
    }

    pub fn len(&self) -> usize {
        match self {
            DistanceOracle::Matrix { n, .. } => *n,
            DistanceOracle::Euclidean { dim, coords } => coords.len() / dim,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn dist(&self, a: PointId, b: PointId) -> f64 {
        match self {
            DistanceOracle::Matrix { n, values } => values[a.index() * n + b.index()],
            DistanceOracle::Euclidean { dim, coords } => {
                if a == b {
                    return 0.0;
                }
                let pa = &coords[a.index() * dim..(a.index() + 1) * dim];
                let pb = &coords[b.index() * dim..(b.index() + 1) * dim];
                pa.iter()
                    .zip(pb)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt()
            }
        }
    }

    /// Coordinates of a point, for Euclidean oracles.
    pub fn coords(&self, p: PointId) -> Option<&[f64]> {
        match self {
            DistanceOracle::Matrix { .. } => None,
            DistanceOracle::Euclidean { dim, coords } => {
                Some(&coords[p.index() * dim..(p.index() + 1) * dim])
            }
        }
    }

    /// Checks zero diagonal, symmetry, non-negativity and the triangle
    /// inequality. Euclidean oracles are metric by construction.
    pub fn check_metric(&self) -> Result<()> {
        let DistanceOracle::Matrix { n, values } = self else {
            return Ok(());
        };
        let n = *n;
        let at = |i: usize, j: usize| values[i * n + j];
        for i in 0..n {
            if at(i, i) != 0.0 {
                return Err(Error::instance(format!("d({i},{i}) = {} is not zero", at(i, i))));
            }
            for j in 0..n {
                let d = at(i, j);
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::instance(format!("d({i},{j}) = {d} is not a distance")));
                }
                if d != at(j, i) {
                    return Err(Error::instance(format!("d({i},{j}) != d({j},{i})")));
                }
            }
        }
        // Exhaustive for small matrices, otherwise a deterministic stride.
        let total = n.saturating_mul(n).saturating_mul(n);
        let stride = if total <= TRIANGLE_EXHAUSTIVE_LIMIT {
            1
        } else {
            total / TRIANGLE_EXHAUSTIVE_LIMIT + 1
        };
        let mut idx = 0usize;
        while idx < total {
            let (a, b, c) = (idx / (n * n), (idx / n) % n, idx % n);
            let direct = at(a, c);
            let detour = at(a, b) + at(b, c);
            if direct > detour * (1.0 + TRIANGLE_SLACK) + f64::MIN_POSITIVE {
                return Err(Error::instance(format!(
                    "triangle inequality fails: d({a},{c}) = {direct} > d({a},{b}) + d({b},{c}) = {detour}"
                )));
            }
            idx += stride;
        }
        Ok(())
    }
}

/// A clustering-with-outliers instance: clients `X`, facilities `F`, at most
/// `k` centers, `m` outliers, and the cost exponent `z`.
///
/// Client and facility lists are kept sorted by id without duplicates.
#[derive(Debug, Clone)]
pub struct MetricInstance {
    oracle: Arc<DistanceOracle>,
    clients: Vec<PointId>,
    facilities: Vec<PointId>,
    k: usize,
    m: usize,
    z: f64,
}

impl MetricInstance {
    pub fn new(
        oracle: Arc<DistanceOracle>,
        mut clients: Vec<PointId>,
        mut facilities: Vec<PointId>,
        k: usize,
        m: usize,
        z: f64,
    ) -> Result<Self> {
        clients.sort_unstable();
        clients.dedup();
        facilities.sort_unstable();
        facilities.dedup();
        let n = oracle.len();
        if clients.is_empty() {
            return Err(Error::instance("no clients"));
        }
        if facilities.is_empty() {
            return Err(Error::instance("no facilities"));
        }
        if let Some(p) = clients.iter().chain(&facilities).find(|p| p.index() >= n) {
            return Err(Error::instance(format!("point {p} outside a universe of {n}")));
        }
        if k == 0 {
            return Err(Error::instance("k must be positive"));
        }
        if m > clients.len() {
            return Err(Error::instance(format!(
                "m = {m} exceeds the number of clients {}",
                clients.len()
            )));
        }
        if !(z.is_finite() && z >= 1.0) {
            return Err(Error::instance(format!("z = {z} must be a finite real >= 1")));
        }
        Ok(MetricInstance { oracle, clients, facilities, k, m, z })
    }

    /// Every point of the universe is both a client and a facility.
    pub fn all_points(oracle: Arc<DistanceOracle>, k: usize, m: usize, z: f64) -> Result<Self> {
        let ids: Vec<PointId> = (0..oracle.len()).map(PointId::from).collect();
        Self::new(oracle, ids.clone(), ids, k, m, z)
    }

    pub fn oracle(&self) -> &DistanceOracle {
        &self.oracle
    }

    pub fn shared_oracle(&self) -> &Arc<DistanceOracle> {
        &self.oracle
    }

    pub fn clients(&self) -> &[PointId] {
        &self.clients
    }

    pub fn facilities(&self) -> &[PointId] {
        &self.facilities
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    #[inline]
    pub fn dist(&self, a: PointId, b: PointId) -> f64 {
        self.oracle.dist(a, b)
    }

    /// Same points, new parameters.
    pub fn with_params(&self, k: usize, m: usize, z: f64) -> Result<Self> {
        Self::new(self.oracle.clone(), self.clients.clone(), self.facilities.clone(), k, m, z)
    }

    /// Same points and parameters, different facility set.
    pub fn with_facilities(&self, facilities: Vec<PointId>) -> Result<Self> {
        Self::new(self.oracle.clone(), self.clients.clone(), facilities, self.k, self.m, self.z)
    }

    /// Same oracle and parameters, a subset of the clients.
    pub fn with_clients(&self, clients: Vec<PointId>, m: usize) -> Result<Self> {
        Self::new(self.oracle.clone(), clients, self.facilities.clone(), self.k, m, self.z)
    }
}
