//! Empirical checks of the sampling guarantees. These are test harnesses: the
//! solver never calls them.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lemma_sample_size;
use super::rings::RingPartition;
use super::sample::WeightedCoreset;
use crate::cost::{diam, point_costs, set_dist, summ, wcost_t};
use crate::error::{Error, Result};
use crate::metric::{DistanceOracle, MetricInstance, PointId};
use crate::seed::StreamSeed;
use crate::solvers::{binomial, Combinations};

/// Parameters of one sampling experiment: accuracy `xi`, failure probability
/// `lambda'`, largest outlier count `q`, and the exponent `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaConfig {
    pub xi: f64,
    pub lambda_prime: f64,
    pub q: usize,
    pub z: f64,
}

impl LemmaConfig {
    pub fn sample_size(&self) -> usize {
        lemma_sample_size(self.xi, self.lambda_prime, self.q)
    }
}

/// Quantities of one (V, U, t) comparison. `h` sums `d(., C)^z`, `h'` is the
/// same sum with outliers trimmed (`t` from V, `t'` from U), `eta` is the
/// smallest `d(., C)`, and `m_bound` is the spread `M` of the concentration
/// step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaSymbols {
    pub t: usize,
    pub t_prime: usize,
    pub h_v: f64,
    pub h_u: f64,
    pub h_prime_v: f64,
    pub h_prime_u: f64,
    pub eta_v: f64,
    pub eta_u: f64,
    pub m_bound: f64,
    /// `|cost_t(V, C) - (|V| / |U|) cost_t'(U, C)|`.
    pub deviation: f64,
    /// `xi |V| (diam(V) + d(V, C))` for `z = 1`, `xi |V| M` otherwise.
    pub bound: f64,
}

fn symbols(
    oracle: &DistanceOracle,
    v_costs: &[f64],
    u: &[PointId],
    centers: &[PointId],
    t: usize,
    config: &LemmaConfig,
    diam_v: f64,
) -> Result<LemmaSymbols> {
    let u_costs = point_costs(oracle, u, centers, config.z);
    let (nv, nu) = (v_costs.len(), u.len());
    let t_prime = t * nu / nv;
    let eta_v = v_costs.iter().copied().fold(f64::INFINITY, f64::min).powf(1.0 / config.z);
    let eta_u = u_costs.iter().copied().fold(f64::INFINITY, f64::min).powf(1.0 / config.z);
    let h_prime_v = summ(v_costs, t)?;
    let h_prime_u = summ(&u_costs, t_prime)?;
    let m_bound = if config.z == 1.0 {
        diam_v
    } else {
        (2.0 * config.z + 2.0).exp2() * (eta_v.powf(config.z) + diam_v.powf(config.z))
    };
    let bound = if config.z == 1.0 {
        config.xi * nv as f64 * (diam_v + eta_v)
    } else {
        config.xi * nv as f64 * m_bound
    };
    Ok(LemmaSymbols {
        t,
        t_prime,
        h_v: v_costs.iter().sum(),
        h_u: u_costs.iter().sum(),
        h_prime_v,
        h_prime_u,
        eta_v,
        eta_u,
        m_bound,
        deviation: (h_prime_v - h_prime_u * nv as f64 / nu as f64).abs(),
        bound,
    })
}

/// Compares `V` against one sample `U` (a multiset of points of `V`) at
/// outlier count `t`.
pub fn lemma_deviation(
    oracle: &DistanceOracle,
    v: &[PointId],
    u: &[PointId],
    centers: &[PointId],
    t: usize,
    config: &LemmaConfig,
) -> Result<LemmaSymbols> {
    if u.is_empty() {
        return Err(Error::domain("sample is empty"));
    }
    set_dist(oracle, v, centers)?;
    let diam_v = diam(oracle, v)?;
    symbols(oracle, &point_costs(oracle, v, centers, config.z), u, centers, t, config, diam_v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub s_prime: usize,
    pub trials: usize,
    /// Trials in which some `t <= q` exceeded the bound.
    pub violations: usize,
    pub violation_fraction: f64,
    /// `lambda' + 3 sqrt(lambda' / trials)`.
    pub allowed_fraction: f64,
    /// Largest `deviation / bound` over all trials and `t`.
    pub max_ratio: f64,
    /// The comparison attaining `max_ratio`.
    pub worst: Option<LemmaSymbols>,
}

/// Draws `trials` independent samples of size `s'` from `V` with replacement
/// and counts how often the trimmed cost of some `t <= q` strays beyond the
/// lemma's bound. Trial `i` uses the stream `seed / "lemma-trial" / i`.
pub fn sampling_lemma_check(
    oracle: &DistanceOracle,
    v: &[PointId],
    centers: &[PointId],
    config: &LemmaConfig,
    trials: usize,
    seed: StreamSeed,
) -> Result<LemmaReport> {
    if !(config.xi > 0.0 && config.lambda_prime > 0.0 && config.lambda_prime < 1.0) {
        return Err(Error::domain("xi must be positive and lambda' must lie in (0, 1)"));
    }
    let s_prime = config.sample_size();
    if v.len() < s_prime {
        return Err(Error::domain(format!("|V| = {} is below the sample size s' = {s_prime}", v.len())));
    }
    if config.q > v.len() {
        return Err(Error::domain("q exceeds |V|"));
    }
    set_dist(oracle, v, centers)?;
    let diam_v = diam(oracle, v)?;
    let v_costs = point_costs(oracle, v, centers, config.z);
    let outcomes: Vec<(bool, LemmaSymbols)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = seed.derive("lemma-trial", trial as u64).rng();
            let u: Vec<PointId> = (0..s_prime).map(|_| v[rng.random_range(0..v.len())]).collect();
            let mut violated = false;
            let mut worst: Option<LemmaSymbols> = None;
            for t in 0..=config.q {
                let sym = symbols(oracle, &v_costs, &u, centers, t, config, diam_v)?;
                violated |= sym.deviation > sym.bound;
                if worst.as_ref().is_none_or(|w| ratio(&sym) > ratio(w)) {
                    worst = Some(sym);
                }
            }
            Ok((violated, worst.expect("q + 1 >= 1 comparisons")))
        })
        .collect::<Result<_>>()?;
    let violations = outcomes.iter().filter(|(v, _)| *v).count();
    let mut worst: Option<LemmaSymbols> = None;
    for (_, sym) in outcomes {
        if worst.as_ref().is_none_or(|w| ratio(&sym) > ratio(w)) {
            worst = Some(sym);
        }
    }
    let lp = config.lambda_prime;
    Ok(LemmaReport {
        s_prime,
        trials,
        violations,
        violation_fraction: if trials == 0 { 0.0 } else { violations as f64 / trials as f64 },
        allowed_fraction: lp + 3.0 * (lp / trials.max(1) as f64).sqrt(),
        max_ratio: worst.as_ref().map_or(0.0, ratio),
        worst,
    })
}

fn ratio(sym: &LemmaSymbols) -> f64 {
    if sym.bound > 0.0 {
        sym.deviation / sym.bound
    } else if sym.deviation > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Outcome of [`coreset_guarantee_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuaranteeReport {
    pub center_sets: usize,
    pub splits: usize,
    /// Largest `|sum a - sum b| / (epsilon sum a)` seen.
    pub worst_ratio: f64,
    pub holds: bool,
}

/// Checks the coreset against every center set of size `1..=k` and every way
/// of spreading at most `m` outliers over the cells:
/// `|sum cost_{m_c}(cell) - sum wcost_{floor(m_c / w_c)}(cell entries)| <=
/// epsilon * sum cost_{m_c}(cell)`. Refuses when the number of center sets
/// exceeds `max_center_sets`.
pub fn coreset_guarantee_check(
    inst: &MetricInstance,
    rp: &RingPartition,
    coreset: &WeightedCoreset,
    epsilon: f64,
    max_center_sets: u64,
) -> Result<GuaranteeReport> {
    let facilities = inst.facilities();
    let kmax = inst.k().min(facilities.len());
    let needed: u128 = (1..=kmax).map(|r| binomial(facilities.len(), r)).sum();
    if needed > u128::from(max_center_sets) {
        return Err(Error::BudgetExceeded { needed, budget: max_center_sets });
    }
    let cells = coreset.cells(rp)?;
    let (oracle, z, m) = (inst.oracle(), inst.z(), inst.m());
    let sets: Vec<Vec<PointId>> = (1..=kmax)
        .flat_map(|r| Combinations::new(facilities.len(), r))
        .map(|c| c.iter().map(|&i| facilities[i]).collect())
        .collect();
    let per_set: Vec<(usize, f64)> = sets
        .par_iter()
        .map(|centers| {
            let mut table = Vec::with_capacity(cells.len());
            for cell in &cells {
                let costs = point_costs(oracle, &cell.members, centers, z);
                let top = m.min(cell.members.len());
                let row = (0..=top)
                    .map(|t| {
                        let a = summ(&costs, t)?;
                        let b = wcost_t(oracle, &cell.entries, centers, t / cell.weight as usize, z)?;
                        Ok((a, b))
                    })
                    .collect::<Result<Vec<_>>>()?;
                table.push(row);
            }
            let mut splits = 0;
            let mut worst = 0.0f64;
            spread(&table, 0, m, 0.0, 0.0, epsilon, &mut splits, &mut worst);
            Ok((splits, worst))
        })
        .collect::<Result<_>>()?;
    let splits = per_set.iter().map(|p| p.0).sum();
    let worst_ratio = per_set.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(GuaranteeReport { center_sets: sets.len(), splits, worst_ratio, holds: worst_ratio <= 1.0 + 1e-12 })
}

#[allow(clippy::too_many_arguments)]
fn spread(
    table: &[Vec<(f64, f64)>],
    cell: usize,
    left: usize,
    sum_a: f64,
    sum_b: f64,
    epsilon: f64,
    splits: &mut usize,
    worst: &mut f64,
) {
    if cell == table.len() {
        *splits += 1;
        let dev = (sum_a - sum_b).abs();
        let allowed = epsilon * sum_a;
        let r = if allowed > 0.0 {
            dev / allowed
        } else if dev > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        *worst = worst.max(r);
        return;
    }
    for (t, &(a, b)) in table[cell].iter().enumerate().take(left + 1) {
        spread(table, cell + 1, left - t, sum_a + a, sum_b + b, epsilon, splits, worst);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_sample_has_no_deviation() {
        let o = DistanceOracle::line(&[0.0, 1.0, 2.0, 7.0, 9.0]).unwrap();
        let v: Vec<PointId> = (1..5u32).map(PointId).collect();
        let config = LemmaConfig { xi: 0.5, lambda_prime: 0.1, q: 2, z: 1.0 };
        for t in 0..=2 {
            let sym = lemma_deviation(&o, &v, &v, &[PointId(0)], t, &config).unwrap();
            assert_eq!(sym.t_prime, t);
            assert_eq!(sym.deviation, 0.0);
        }
    }

    #[test]
    fn too_small_population_is_refused() {
        let o = DistanceOracle::line(&[0.0, 1.0, 2.0]).unwrap();
        let config = LemmaConfig { xi: 0.5, lambda_prime: 0.1, q: 0, z: 1.0 };
        let err = sampling_lemma_check(&o, &[PointId(1), PointId(2)], &[PointId(0)], &config, 10, StreamSeed(0));
        assert!(matches!(err, Err(Error::Domain(_))));
    }
}
