use std::path::Path;
use std::process::{Command, Output};

fn kmout(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmout")).args(args).current_dir(dir).output().unwrap()
}

fn ok(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn generate_solve_and_oracle_agree() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&kmout(&["generate", "--clusters", "2", "--points-per-cluster", "5", "--outliers", "1", "--seed", "8", "--out", "x.txt"], d));
    let solve: serde_json::Value =
        serde_json::from_str(&ok(&kmout(&["solve", "--instance", "x.txt", "--seed", "1", "--s", "100", "--rounds", "1"], d)))
            .unwrap();
    let oracle: serde_json::Value = serde_json::from_str(&ok(&kmout(&["oracle", "--instance", "x.txt"], d))).unwrap();
    assert_eq!(solve["best"]["cost"], oracle["cost"]);
    assert!(solve.get("wall_ms").is_some());
}

#[test]
fn solve_without_timing_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&kmout(&["generate", "--points-per-cluster", "8", "--seed", "2", "--out", "x.txt"], d));
    let args = ["solve", "--instance", "x.txt", "--seed", "5", "--s", "2", "--rounds", "2", "--no-timing"];
    assert_eq!(ok(&kmout(&args, d)), ok(&kmout(&args, d)));
}

#[test]
fn colors_and_matroid_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let inst = "kmout-instance v1\nk=1\nm=1\nz=1\neuclidean dim=1\n0,client,0\n1,client,1\n2,client,50\n3,facility,0.5\n4,facility,40\n";
    std::fs::write(d.join("x.txt"), inst).unwrap();
    std::fs::write(d.join("c.txt"), "colors v1\nbudgets=1,0\n0,1\n1,1\n2,0\n").unwrap();
    std::fs::write(d.join("m.txt"), "matroid v1\nkind=partition\nblock=1:3,4\n").unwrap();
    for extra in [&["--colors", "c.txt"][..], &["--matroid", "m.txt"], &["--colors", "c.txt", "--matroid", "m.txt"]] {
        let mut solve = vec!["solve", "--instance", "x.txt", "--seed", "0", "--s", "50", "--rounds", "1"];
        solve.extend_from_slice(extra);
        let mut oracle = vec!["oracle", "--instance", "x.txt"];
        oracle.extend_from_slice(extra);
        let s: serde_json::Value = serde_json::from_str(&ok(&kmout(&solve, d))).unwrap();
        let o: serde_json::Value = serde_json::from_str(&ok(&kmout(&oracle, d))).unwrap();
        assert_eq!(s["best"]["cost"], o["cost"], "{extra:?}");
    }
}

#[test]
fn experiment_exit_code_follows_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let suite = r#"{"instances": [{"id": "p", "source": {"planted": {"clusters": 2, "points_per_cluster": 4}}}],
                    "reduction": {"rounds": 1, "coreset": {"mode": "practical", "practical_s": 100}},
                    "thresholds": {"success_ratio": 1.0, "success_fraction": 1.0}}"#;
    std::fs::write(d.join("suite.json"), suite).unwrap();
    let out = kmout(&["experiment", "--suite", "suite.json", "--seed", "1", "--no-timing"], d);
    let report: serde_json::Value = serde_json::from_str(&ok(&out)).unwrap();
    assert_eq!(report["summary"]["passed"], true);

    let failing = suite.replace("\"success_ratio\": 1.0", "\"success_ratio\": 0.5");
    std::fs::write(d.join("suite.json"), failing).unwrap();
    let out = kmout(&["experiment", "--suite", "suite.json", "--seed", "1"], d);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dump_rings_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&kmout(&["generate", "--points-per-cluster", "10", "--seed", "3", "--out", "x.txt"], d));
    let dump = ok(&kmout(&["coreset-dump", "--instance", "x.txt", "--seed", "4", "--s", "2"], d));
    assert!(dump.starts_with("coreset v1\n"));
    let rings: serde_json::Value = serde_json::from_str(&ok(&kmout(&["check-rings", "--instance", "x.txt"], d))).unwrap();
    assert_eq!(rings["passed"], true);

    let missing = kmout(&["solve", "--instance", "nope.txt", "--seed", "1"], d);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!kmout(&["solve", "--instance", "x.txt"], d).status.success(), "--seed is required");
}
