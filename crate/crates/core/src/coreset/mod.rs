//! Ring coresets.
//!
//! A `(k+m)`-center baseline `A` is computed on the augmented instance in which
//! every client is also a facility. Clients are grouped by their nearest
//! baseline center and by distance band `(2^{j-1} R, 2^j R]`, and each large
//! group is replaced by a uniform sample with integer weights. The union of the
//! groups is the coreset `S`.

mod baseline;
mod lemma;
mod rings;
mod sample;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use baseline::{
    baseline_solve, baseline_solve_constrained, build_augmented_instance, BaselineConfig, BaselineResult,
};
pub use lemma::{
    coreset_guarantee_check, lemma_deviation, sampling_lemma_check, GuaranteeReport, LemmaConfig, LemmaReport,
    LemmaSymbols,
};
pub use rings::{
    ceil_log2, ring_partition, ring_partition_colored, verify_ring_bounds, Ring, RingBoundsReport, RingKey,
    RingPartition,
};
pub use sample::{build_coreset, coreset_size_bound, Cell, CoresetGroup, WeightedCoreset};

/// How the per-ring sample size `s` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeMode {
    /// The worst-case formula; usually larger than every ring.
    Theory,
    /// An explicit `s`.
    Practical,
}

/// Accuracy and failure parameters of the coreset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CoresetParams {
    pub epsilon: f64,
    pub lambda: f64,
    /// Approximation factor assumed for the baseline when its solver proves
    /// none (local search for `z > 1` or under a matroid).
    pub tau: f64,
    /// Leading constant of the theory sample size.
    pub c_theory: f64,
    /// Exponent constant: the theory size carries `2^(c' z)` when `z > 1`.
    pub c_prime: f64,
    pub mode: SizeMode,
    pub practical_s: Option<usize>,
}

impl Default for CoresetParams {
    fn default() -> Self {
        CoresetParams {
            epsilon: 0.5,
            lambda: 0.1,
            tau: 1.0,
            c_theory: 1.0,
            c_prime: 9.0,
            mode: SizeMode::Theory,
            practical_s: None,
        }
    }
}

impl CoresetParams {
    pub fn practical(s: usize) -> Self {
        CoresetParams { mode: SizeMode::Practical, practical_s: Some(s), ..CoresetParams::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::domain(format!("epsilon = {} must lie in (0, 1)", self.epsilon)));
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(Error::domain(format!("lambda = {} must lie in (0, 1)", self.lambda)));
        }
        if !(self.tau >= 1.0 && self.tau.is_finite()) {
            return Err(Error::domain(format!("tau = {} must be a finite real >= 1", self.tau)));
        }
        if !(self.c_theory > 0.0 && self.c_prime >= 0.0) {
            return Err(Error::domain("theory constants must be positive"));
        }
        if self.mode == SizeMode::Practical && !matches!(self.practical_s, Some(s) if s >= 1) {
            return Err(Error::domain("practical mode needs an explicit s >= 1"));
        }
        Ok(())
    }

    /// Per-ring sample size `s` for `n` clients, `k` centers, `m` outliers,
    /// exponent `z` and baseline factor `tau`.
    pub fn sample_size(&self, n: usize, k: usize, m: usize, z: f64, tau: f64) -> Result<usize> {
        self.validate()?;
        match self.mode {
            SizeMode::Practical => Ok(self.practical_s.unwrap_or(1)),
            SizeMode::Theory => {
                let power = if z > 1.0 { (self.c_prime * z).exp2() } else { 1.0 };
                let lead = self.c_theory * tau * tau * power / (self.epsilon * self.epsilon);
                let body = m as f64 + k as f64 * (n as f64).ln() + (1.0 / self.lambda).ln();
                Ok(saturating_ceil(lead * body).max(1))
            }
        }
    }

    /// Accuracy `xi` handed to the sampling lemma for each ring.
    pub fn xi(&self, z: f64, tau: f64) -> f64 {
        if z == 1.0 {
            self.epsilon / (8.0 * tau)
        } else {
            self.epsilon / ((9.0 * z).exp2() * tau)
        }
    }

    /// Per-ring failure probability `n^-k lambda / (4 (k+m) (1+phi))`.
    pub fn lambda_prime(&self, n: usize, k: usize, m: usize, phi: u32) -> f64 {
        (n as f64).powi(-(k as i32)) * self.lambda / (4.0 * (k + m) as f64 * (1.0 + f64::from(phi)))
    }
}

/// Sample size `ceil((4 / xi^2) (q + ln(2 / lambda')))` of the sampling lemma.
pub fn lemma_sample_size(xi: f64, lambda_prime: f64, q: usize) -> usize {
    saturating_ceil(4.0 / (xi * xi) * (q as f64 + (2.0 / lambda_prime).ln()))
}

fn saturating_ceil(x: f64) -> usize {
    if x >= usize::MAX as f64 {
        usize::MAX
    } else {
        x.ceil() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theory_size_matches_formula() {
        let p = CoresetParams { epsilon: 0.5, lambda: 0.1, ..CoresetParams::default() };
        // (1 / 0.25) (2 + 3 ln 100 + ln 10)
        let expected = (4.0 * (2.0 + 3.0 * 100f64.ln() + 10f64.ln())).ceil() as usize;
        assert_eq!(p.sample_size(100, 3, 2, 1.0, 1.0).unwrap(), expected);
        // z = 2 multiplies by 2^18 before rounding.
        let z2 = (4.0 * 262_144.0 * (2.0 + 3.0 * 100f64.ln() + 10f64.ln())).ceil() as usize;
        assert_eq!(p.sample_size(100, 3, 2, 2.0, 1.0).unwrap(), z2);
    }

    #[test]
    fn practical_mode_needs_s() {
        let mut p = CoresetParams::practical(7);
        assert_eq!(p.sample_size(10, 1, 1, 1.0, 1.0).unwrap(), 7);
        p.practical_s = None;
        assert!(p.sample_size(10, 1, 1, 1.0, 1.0).is_err());
    }

    #[test]
    fn derived_lemma_parameters() {
        let p = CoresetParams { epsilon: 0.4, ..CoresetParams::default() };
        assert_eq!(p.xi(1.0, 2.0), 0.4 / 16.0);
        assert_eq!(p.xi(2.0, 1.0), 0.4 / 262_144.0);
        let lp = p.lambda_prime(10, 2, 1, 4);
        assert!((lp - 0.01 * 0.1 / (4.0 * 3.0 * 5.0)).abs() < 1e-18);
        assert_eq!(lemma_sample_size(0.3, 0.1, 3), ((4.0 / 0.09) * (3.0 + 20f64.ln())).ceil() as usize);
    }
}
