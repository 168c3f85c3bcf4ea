mod common;

use std::collections::BTreeMap;

use common::{brute_colorful, brute_colorful_matroid, brute_matroid, brute_opt, close, disjoint_instance, random_instance};
use kmout_core::coreset::CoresetParams;
use kmout_core::extensions::colorful::ColorfulInstance;
use kmout_core::extensions::matroid::{check_axioms, direct_sum_matroid, PartitionBlock};
use kmout_core::extensions::{colorful_matroid_solve, colorful_solve, matroid_median_solve};
use kmout_core::solvers::{exact_kmedian, SolverHandle};
use kmout_core::{solve_with_outliers, Coloring, Error, Matroid, MetricInstance, PointId, ReductionConfig};

fn lossless() -> ReductionConfig {
    ReductionConfig { coreset: CoresetParams::practical(1000), rounds: 1, ..Default::default() }
}

fn two_colors(inst: &MetricInstance, budgets: Vec<usize>) -> ColorfulInstance {
    let colors: BTreeMap<PointId, usize> = inst.clients().iter().map(|&p| (p, p.index() % 2)).collect();
    ColorfulInstance::new(inst, Coloring::new(colors, budgets).unwrap()).unwrap()
}

fn partition(inst: &MetricInstance) -> Matroid {
    let f = inst.facilities();
    let half = f.len() / 2;
    Matroid::partition(vec![
        PartitionBlock { members: f[..half].to_vec(), capacity: 1 },
        PartitionBlock { members: f[half..].to_vec(), capacity: 1 },
    ])
    .unwrap()
}

#[test]
fn colorful_lossless_equals_brute_force() {
    for seed in 0..15 {
        let inst = random_instance(seed, 12, 5, 2, 0, 1.0);
        let budgets = vec![(seed % 2) as usize, 1];
        let cinst = two_colors(&inst, budgets.clone());
        let report = colorful_solve(&cinst, &lossless()).unwrap();
        assert!(close(report.best.cost, brute_colorful(cinst.base(), cinst.coloring())), "seed {seed}");
        for (t, &b) in budgets.iter().enumerate() {
            let used = report.best.outliers.iter().filter(|p| p.index() % 2 == t).count();
            assert!(used <= b);
        }
    }
}

#[test]
fn one_color_matches_plain() {
    let inst = random_instance(21, 25, 6, 2, 2, 1.0);
    let cinst = ColorfulInstance::new(&inst, Coloring::single(inst.clients(), 2)).unwrap();
    let config = ReductionConfig { coreset: CoresetParams::practical(3), rounds: 2, seed: 5, ..Default::default() };
    let a = colorful_solve(&cinst, &config).unwrap();
    let b = solve_with_outliers(&inst, &config).unwrap();
    assert_eq!(a.best.cost, b.best.cost);
    assert_eq!(a.best.centers, b.best.centers);
}

#[test]
fn zero_budgets_are_plain_kmedian() {
    let inst = random_instance(22, 10, 5, 2, 0, 1.0);
    let cinst = two_colors(&inst, vec![0, 0]);
    let report = colorful_solve(&cinst, &lossless()).unwrap();
    let pts = kmout_core::WeightedPointSet::unit(inst.clients());
    let direct = exact_kmedian(inst.oracle(), &pts, inst.facilities(), 2, 1.0, 1000).unwrap();
    assert!(close(report.best.cost, direct.cost));
}

#[test]
fn infeasible_budgets_are_rejected() {
    let inst = random_instance(23, 4, 3, 1, 0, 1.0);
    let colors = inst.clients().iter().map(|&p| (p, 0)).collect();
    let err = ColorfulInstance::new(&inst, Coloring::new(colors, vec![5]).unwrap()).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

#[test]
fn direct_sum_axioms_hold() {
    let inst = disjoint_instance(1, 4, 4, 1, 1, 1.0);
    for m in 0..=2 {
        let prime = direct_sum_matroid(&partition(&inst), inst.clients(), m).unwrap();
        assert_eq!(prime.rank(), 2 + m);
        assert!(check_axioms(&prime).unwrap().holds());
    }
}

#[test]
fn matroid_lossless_equals_brute_force() {
    for seed in 0..10 {
        let inst = disjoint_instance(100 + seed, 9, 6, 2, 1 + (seed % 2) as usize, 1.0);
        let matroid = partition(&inst);
        let report = matroid_median_solve(&inst, &matroid, &lossless()).unwrap();
        assert!(matroid.is_independent(&report.best.centers));
        assert!(close(report.best.cost, brute_matroid(&inst, &matroid)), "seed {seed}");
    }
}

#[test]
fn uniform_matroid_lossless_equals_plain_optimum() {
    let inst = disjoint_instance(7, 10, 5, 2, 2, 1.0);
    let uniform = Matroid::uniform(inst.facilities(), 2).unwrap();
    let report = matroid_median_solve(&inst, &uniform, &lossless()).unwrap();
    assert!(close(report.best.cost, brute_opt(&inst)));
}

#[test]
fn matroid_local_search_stays_independent() {
    let inst = disjoint_instance(8, 30, 8, 2, 1, 1.0);
    let matroid = partition(&inst);
    let config = ReductionConfig {
        coreset: CoresetParams::practical(4),
        solver: SolverHandle::local_search(),
        rounds: 1,
        ..Default::default()
    };
    let report = matroid_median_solve(&inst, &matroid, &config).unwrap();
    assert!(matroid.is_independent(&report.best.centers));
    assert_eq!(report.beta, kmout_core::solvers::Guarantee::Heuristic);
}

#[test]
fn matroid_inputs_are_checked() {
    let shared = random_instance(9, 6, 6, 1, 1, 1.0);
    let m = Matroid::uniform(shared.facilities(), 1).unwrap();
    assert!(matches!(matroid_median_solve(&shared, &m, &lossless()), Err(Error::Domain(_))));
    let inst = disjoint_instance(9, 6, 3, 1, 1, 1.0);
    let zero = Matroid::uniform(inst.facilities(), 0).unwrap();
    assert!(matches!(matroid_median_solve(&inst, &zero, &lossless()), Err(Error::Domain(_))));
}

#[test]
fn colorful_matroid_lossless_equals_brute_force() {
    for seed in 0..8 {
        let inst = disjoint_instance(200 + seed, 10, 6, 2, 0, 1.0);
        let cinst = two_colors(&inst, vec![1, 1]);
        let matroid = partition(&inst);
        let report = colorful_matroid_solve(&cinst, &matroid, &lossless()).unwrap();
        assert!(matroid.is_independent(&report.best.centers));
        let expected = brute_colorful_matroid(cinst.base(), cinst.coloring(), &matroid);
        assert!(close(report.best.cost, expected), "seed {seed}");
    }
}
