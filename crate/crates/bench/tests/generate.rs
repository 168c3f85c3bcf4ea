use kmout_bench::format::write_instance;
use kmout_bench::generate::{planted_instance, PlantedConfig};
use kmout_core::solvers::exact_outlier_oracle;
use kmout_core::PointId;

#[test]
fn same_seed_same_instance() {
    let config = PlantedConfig { seed: 41, facility_count: Some(10), ..Default::default() };
    let a = planted_instance(&config).unwrap();
    let b = planted_instance(&config).unwrap();
    assert_eq!(write_instance(&a.instance), write_instance(&b.instance));
    assert_eq!(a.labels, b.labels);
    let c = planted_instance(&PlantedConfig { seed: 42, ..config }).unwrap();
    assert_ne!(write_instance(&a.instance), write_instance(&c.instance));
}

#[test]
fn shape_matches_the_config() {
    let config = PlantedConfig {
        clusters: 4,
        points_per_cluster: 5,
        outlier_count: 3,
        dimension: 3,
        facility_count: Some(7),
        ..Default::default()
    };
    let p = planted_instance(&config).unwrap();
    assert_eq!(p.instance.clients().len(), 23);
    assert_eq!(p.instance.facilities().len(), 7);
    assert_eq!((p.instance.k(), p.instance.m()), (4, 3));
    assert_eq!(p.outliers(), vec![PointId(20), PointId(21), PointId(22)]);
}

#[test]
fn far_outliers_are_what_the_oracle_drops() {
    let config = PlantedConfig {
        clusters: 2,
        points_per_cluster: 5,
        spread: 0.2,
        outlier_count: 2,
        outlier_distance_factor: 20.0,
        centers: Some(vec![vec![0.0, 0.0], vec![5.0, 0.0]]),
        seed: 7,
        ..Default::default()
    };
    let p = planted_instance(&config).unwrap();
    let mut dropped = exact_outlier_oracle(&p.instance, 1_000_000).unwrap().outliers;
    dropped.sort();
    assert_eq!(dropped, p.outliers());
}

#[test]
fn bad_configs_are_rejected() {
    assert!(planted_instance(&PlantedConfig { dimension: 0, ..Default::default() }).is_err());
    assert!(planted_instance(&PlantedConfig { facility_count: Some(1000), ..Default::default() }).is_err());
    assert!(planted_instance(&PlantedConfig { centers: Some(vec![vec![0.0]]), ..Default::default() }).is_err());
}
