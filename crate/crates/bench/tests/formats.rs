use std::collections::BTreeMap;
use std::sync::Arc;

use kmout_bench::format::{
    read_colors, read_coreset_dump, read_instance, read_matroid, write_colors, write_coreset_dump, write_instance,
    write_matroid,
};
use kmout_bench::format::CoresetDump;
use kmout_core::extensions::matroid::PartitionBlock;
use kmout_core::{coreset_snapshot, Coloring, CoresetParams, DistanceOracle, Matroid, MetricInstance, PointId, ReductionConfig};
use proptest::prelude::*;

fn roles() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, 1..12)
}

fn build(roles: &[u8], oracle: DistanceOracle, k: usize, m: usize, z: f64) -> Option<MetricInstance> {
    let clients: Vec<PointId> = (0..roles.len()).filter(|&i| roles[i] != 1).map(PointId::from).collect();
    let facilities: Vec<PointId> = (0..roles.len()).filter(|&i| roles[i] != 0).map(PointId::from).collect();
    MetricInstance::new(Arc::new(oracle), clients, facilities, k, m, z).ok()
}

proptest! {
    #[test]
    fn euclidean_instances_round_trip(
        roles in roles(),
        raw in prop::collection::vec(-1e6f64..1e6, 36),
        dim in 1usize..4,
        k in 1usize..3,
        m in 0usize..3,
        z in prop::sample::select(vec![1.0, 2.0, 1.5]),
    ) {
        let coords = raw[..roles.len() * dim].to_vec();
        let oracle = DistanceOracle::euclidean(dim, coords).unwrap();
        let Some(inst) = build(&roles, oracle, k, m, z) else { return Ok(()) };
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        prop_assert_eq!(back.oracle(), inst.oracle());
        prop_assert_eq!(back.clients(), inst.clients());
        prop_assert_eq!(back.facilities(), inst.facilities());
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn matrix_instances_round_trip(roles in roles(), raw in prop::collection::vec(0.1f64..100.0, 12)) {
        // Points on a line give a valid metric with arbitrary float distances.
        let n = roles.len();
        let mut x = 0.0;
        let pos: Vec<f64> = raw[..n].iter().map(|d| { x += d; x }).collect();
        let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..=i).map(|j| (pos[i] - pos[j]).abs()).collect()).collect();
        let oracle = DistanceOracle::from_lower_triangular(&rows).unwrap();
        let Some(inst) = build(&roles, oracle, 1, 1, 1.0) else { return Ok(()) };
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        prop_assert_eq!(back.oracle(), inst.oracle());
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn colorings_round_trip(colors in prop::collection::btree_map(0u32..50, 0usize..3, 1..20), budgets in prop::collection::vec(0usize..4, 3)) {
        let colors: BTreeMap<PointId, usize> = colors.into_iter().map(|(p, c)| (PointId(p), c)).collect();
        let coloring = Coloring::new(colors, budgets).unwrap();
        let text = write_colors(&coloring);
        let back = read_colors(&text).unwrap();
        prop_assert_eq!(&back, &coloring);
        prop_assert_eq!(write_colors(&back), text);
    }

    #[test]
    fn partition_matroids_round_trip(sizes in prop::collection::vec((1usize..4, 0usize..3), 1..4)) {
        let mut next = 0u32;
        let blocks = sizes
            .iter()
            .map(|&(len, cap)| {
                let members = (next..next + len as u32).map(PointId).collect();
                next += len as u32;
                PartitionBlock { members, capacity: cap.min(len) }
            })
            .collect();
        let matroid = Matroid::partition(blocks).unwrap();
        let text = write_matroid(&matroid).unwrap();
        let back = read_matroid(&text).unwrap();
        prop_assert_eq!(&back, &matroid);
        prop_assert_eq!(write_matroid(&back).unwrap(), text);
    }
}

#[test]
fn uniform_and_explicit_matroids_round_trip() {
    let ground: Vec<PointId> = (3..7).map(PointId).collect();
    let uniform = Matroid::uniform(&ground, 2).unwrap();
    let explicit = Matroid::explicit(
        &ground[..2],
        vec![vec![], vec![PointId(3)], vec![PointId(4)], vec![PointId(3), PointId(4)]],
    )
    .unwrap();
    for m in [uniform, explicit] {
        let text = write_matroid(&m).unwrap();
        assert_eq!(read_matroid(&text).unwrap(), m);
    }
}

#[test]
fn direct_sums_have_no_file_form() {
    let a = Matroid::uniform(&[PointId(0)], 1).unwrap();
    let b = Matroid::uniform(&[PointId(1)], 1).unwrap();
    assert!(write_matroid(&Matroid::direct_sum(a, b).unwrap()).is_none());
}

#[test]
fn coreset_dump_round_trips_and_keeps_weight() {
    let coords: Vec<f64> = (0..40).map(|i| ((i * 37) % 101) as f64 * 0.5).collect();
    let oracle = Arc::new(DistanceOracle::line(&coords).unwrap());
    let inst = MetricInstance::all_points(oracle, 2, 2, 1.0).unwrap();
    let config = ReductionConfig { coreset: CoresetParams::practical(3), seed: 9, ..Default::default() };
    let snapshot = coreset_snapshot(&inst, None, &config, 1).unwrap();
    let dump = CoresetDump::from_snapshot(&snapshot);
    assert_eq!(dump.total_weight(), 40);
    let text = write_coreset_dump(&dump);
    let back = read_coreset_dump(&text).unwrap();
    assert_eq!(back, dump);
    assert_eq!(write_coreset_dump(&back), text);
}

#[test]
fn errors_name_the_line() {
    let err = read_instance("kmout-instance v1\nk=x\n").unwrap_err();
    assert_eq!(err.line, 2);
    assert!(read_instance("something else\n").is_err());
    assert!(read_colors("colors v1\nbudgets=1\n2,0\n1,0\n").is_err());
    assert!(read_matroid("matroid v1\nkind=graphic\n").is_err());
}
