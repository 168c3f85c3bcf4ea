use rayon::prelude::*;

use crate::cost::{pow_z, WeightedPointSet};
use crate::metric::{DistanceOracle, PointId};

/// Weighted connection costs `w(p) * d(p, f)^z`, one row per weighted entry
/// and one column per facility.
#[derive(Debug, Clone)]
pub struct CostTable {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl CostTable {
    pub fn build(oracle: &DistanceOracle, points: &WeightedPointSet, facilities: &[PointId], z: f64) -> Self {
        let cols = facilities.len();
        let mut values = vec![0.0; points.len() * cols];
        if cols > 0 {
            values.par_chunks_mut(cols).zip(points.entries.par_iter()).for_each(|(row, e)| {
                let w = e.weight as f64;
                for (slot, &f) in row.iter_mut().zip(facilities) {
                    *slot = pow_z(oracle.dist(e.point, f), z) * w;
                }
            });
        }
        CostTable { rows: points.len(), cols, values }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.cols..(row + 1) * self.cols]
    }

    /// Cost of one row under a center set.
    #[inline]
    pub fn row_cost(&self, row: usize, set: &[usize]) -> f64 {
        let r = self.row(row);
        set.iter().map(|&c| r[c]).fold(f64::INFINITY, f64::min)
    }

    /// Total cost of the active rows, summed in row order.
    pub fn set_cost(&self, set: &[usize], active: Option<&[bool]>) -> f64 {
        (0..self.rows)
            .filter(|&r| active.is_none_or(|a| a[r]))
            .map(|r| self.row_cost(r, set))
            .sum()
    }
}
