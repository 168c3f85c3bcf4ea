mod common;

use common::random_instance;
use kmout_core::cost::WeightedPointSet;
use kmout_core::solvers::{exact_kmedian, local_search_kmedian, SolverHandle};

#[test]
fn local_search_within_five_of_exact() {
    for seed in 0..40 {
        let k = 1 + (seed % 3) as usize;
        let inst = random_instance(seed, 14, 10, k, 0, 1.0);
        let pts = WeightedPointSet::unit(inst.clients());
        let exact = exact_kmedian(inst.oracle(), &pts, inst.facilities(), k, 1.0, 10_000).unwrap();
        let ls =
            local_search_kmedian(inst.oracle(), &pts, inst.facilities(), k, 1.0, &SolverHandle::local_search(), None)
                .unwrap();
        assert!(ls.cost >= exact.cost && ls.cost <= 5.0 * exact.cost, "seed {seed}");
    }
}

#[test]
fn restarts_are_seeded() {
    let inst = random_instance(3, 20, 12, 3, 0, 2.0);
    let pts = WeightedPointSet::unit(inst.clients());
    let h = SolverHandle { restarts: 3, seed: 11, ..SolverHandle::local_search() };
    let a = local_search_kmedian(inst.oracle(), &pts, inst.facilities(), 3, 2.0, &h, None).unwrap();
    let b = local_search_kmedian(inst.oracle(), &pts, inst.facilities(), 3, 2.0, &h, None).unwrap();
    assert_eq!(a, b);
    let plain =
        local_search_kmedian(inst.oracle(), &pts, inst.facilities(), 3, 2.0, &SolverHandle::local_search(), None)
            .unwrap();
    assert!(a.cost <= plain.cost);
}
