//! End-to-end tests of the `phsep` binary: format round-trips, the exit-code
//! contract, CLI/library parity, and byte-level determinism.

use phsep::manifest::{EpochEntry, SnapshotManifest};
use phsep::snapshot::{read_snapshot, write_snapshot};
use phsep_core::geometry::{pairwise_distances, PointCloud};
use phsep_core::homology::{h0_persistence, normalize_diagram};
use phsep_core::rng::SplitMix64;
use phsep_core::summaries::persistence_statistic;
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

fn phsep(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phsep"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn phsep")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_lines(path: &Path, lines: &[&str]) {
    std::fs::write(path, lines.join("\n") + "\n").unwrap();
}

#[test]
fn gen_writes_labeled_snapshot_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "gen",
        "--n",
        "60",
        "--d",
        "5",
        "--classes",
        "3",
        "--class-sep",
        "1.5",
        "--seed",
        "9",
        "--out",
        "a.csv",
    ];
    let digest = stdout_json(&phsep(&args, dir.path()));
    assert_eq!(digest["n"], 60);
    assert_eq!(digest["d"], 5);
    assert_eq!(digest["classes"], 3);

    let pc = read_snapshot(&dir.path().join("a.csv")).unwrap();
    assert_eq!(pc.len(), 60);
    assert_eq!(pc.dim(), 5);
    let labels = pc.labels().expect("gen writes labels");
    assert!(labels.iter().all(|&l| l < 3));

    let mut again = args;
    again[12] = "b.csv";
    phsep(&again, dir.path());
    assert_eq!(
        std::fs::read(dir.path().join("a.csv")).unwrap(),
        std::fs::read(dir.path().join("b.csv")).unwrap()
    );
}

#[test]
fn gen_rejects_impossible_center_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = phsep(
        &[
            "gen",
            "--classes",
            "3",
            "--clusters-per-class",
            "3",
            "--d",
            "2",
            "--out",
            "x.csv",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}

#[test]
fn snapshot_round_trip_preserves_values_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = SplitMix64::new(4);
    let data: Vec<f64> = (0..30).map(|_| rng.next_standard_normal() * 1e-3).collect();
    let pc = PointCloud::with_labels(data, 3, vec![0, 1, 2, 0, 1, 2, 0, 1, 2, 0]).unwrap();
    let path = dir.path().join("rt.csv");
    write_snapshot(&path, &pc).unwrap();
    let back = read_snapshot(&path).unwrap();
    assert_eq!(back.coords(), pc.coords());
    assert_eq!(back.labels(), pc.labels());
}

#[test]
fn h0_three_points_on_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.csv");
    write_lines(&path, &["dim_0", "0", "1", "3"]);
    let out = stdout_json(&phsep(&["h0", "line.csv", "--values"], dir.path()));
    assert_eq!(out["n_bars"], 2);
    let values: Vec<f64> = out["normalized_persistences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(values, vec![0.5, 1.0]);
    assert_eq!(out["p_lt_t"].as_f64().unwrap(), 0.5);
}

#[test]
fn h0_two_points_statistic_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    write_lines(&dir.path().join("two.csv"), &["dim_0", "0", "1"]);
    let out = stdout_json(&phsep(&["h0", "two.csv"], dir.path()));
    assert_eq!(out["p_lt_t"].as_f64().unwrap(), 0.0);
}

#[test]
fn h0_malformed_snapshot_exits_2_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    write_lines(
        &dir.path().join("bad.csv"),
        &["dim_0,dim_1", "0,1", "2,not-a-number"],
    );
    let out = phsep(&["h0", "bad.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "diagnostic was: {err}");
}

#[test]
fn h0_matches_library_bit_exactly_on_large_fixture() {
    let dir = tempfile::tempdir().unwrap();
    phsep(
        &[
            "gen",
            "--n",
            "1000",
            "--d",
            "8",
            "--classes",
            "2",
            "--seed",
            "3",
            "--out",
            "f.csv",
        ],
        dir.path(),
    );
    let out = stdout_json(&phsep(&["h0", "f.csv", "--t", "0.6"], dir.path()));

    let pc = read_snapshot(&dir.path().join("f.csv")).unwrap();
    let np =
        normalize_diagram(&h0_persistence(&pairwise_distances(&pc).unwrap()).unwrap()).unwrap();
    let expect = persistence_statistic(&np, 0.6).unwrap();
    assert_eq!(out["p_lt_t"].as_f64().unwrap().to_bits(), expect.to_bits());
    assert_eq!(out["n_bars"].as_u64().unwrap() as usize, np.values().len());
}

#[test]
fn separability_separable_fixture_saturates_supervised_metrics() {
    let dir = tempfile::tempdir().unwrap();
    phsep(
        &[
            "gen",
            "--n",
            "80",
            "--d",
            "6",
            "--classes",
            "2",
            "--class-sep",
            "1000",
            "--seed",
            "1",
            "--out",
            "sep.csv",
        ],
        dir.path(),
    );
    let out = stdout_json(&phsep(&["sep", "sep.csv", "--splits", "5"], dir.path()));
    let metrics = out["metrics"].as_array().unwrap();
    let find = |name: &str| -> &Value {
        metrics
            .iter()
            .find(|m| m["name"] == name)
            .unwrap_or_else(|| panic!("metric {name} missing"))
    };
    assert_eq!(find("thornton")["value"].as_f64().unwrap(), 1.0);
    let roc = find("roc_auc_n");
    assert_eq!(roc["value"].as_f64().unwrap(), 1.0);
    assert!(roc["ci_low"].is_number() && roc["ci_high"].is_number());
}

#[test]
fn separability_supervised_without_labels_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    write_lines(
        &dir.path().join("u.csv"),
        &["dim_0,dim_1", "0,0", "1,0", "0,1"],
    );
    let out = phsep(&["sep", "u.csv", "--thornton"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

fn trivial_manifest(dir: &Path, epochs: &[(usize, &str)]) -> std::path::PathBuf {
    let manifest = SnapshotManifest {
        run_id: "test".into(),
        epochs: epochs
            .iter()
            .map(|&(epoch, path)| EpochEntry {
                epoch,
                path: path.into(),
            })
            .collect(),
        label_path: None,
        metadata: BTreeMap::new(),
    };
    let path = dir.join("manifest.json");
    manifest.save(&path).unwrap();
    path
}

#[test]
fn track_identical_snapshots_converges_at_window() {
    let dir = tempfile::tempdir().unwrap();
    phsep(
        &[
            "gen",
            "--n",
            "40",
            "--d",
            "3",
            "--classes",
            "2",
            "--seed",
            "2",
            "--out",
            "e.csv",
        ],
        dir.path(),
    );
    trivial_manifest(
        dir.path(),
        &[
            (0, "e.csv"),
            (1, "e.csv"),
            (2, "e.csv"),
            (3, "e.csv"),
            (4, "e.csv"),
            (5, "e.csv"),
        ],
    );
    let out = phsep(
        &["track", "manifest.json", "--window", "3", "--out", "r.json"],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    for (i, e) in report["epochs"].as_array().unwrap().iter().enumerate() {
        if i > 0 {
            assert_eq!(e["density_distance_to_previous"].as_f64().unwrap(), 0.0);
        }
    }
    // identical snapshots: the first `window` steps already qualify
    assert_eq!(report["convergence_epoch"], 3);
    assert_eq!(report["schema"], 1);
}

#[test]
fn track_rejects_unsorted_manifest_epochs() {
    let dir = tempfile::tempdir().unwrap();
    phsep(
        &[
            "gen",
            "--n",
            "10",
            "--d",
            "2",
            "--classes",
            "2",
            "--seed",
            "0",
            "--out",
            "e.csv",
        ],
        dir.path(),
    );
    trivial_manifest(dir.path(), &[(1, "e.csv"), (0, "e.csv")]);
    let out = phsep(&["track", "manifest.json"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn track_inconsistent_shapes_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    write_lines(
        &dir.path().join("a.csv"),
        &["dim_0,dim_1", "0,0", "1,1", "2,0"],
    );
    write_lines(&dir.path().join("b.csv"), &["dim_0", "0", "1", "2"]);
    trivial_manifest(dir.path(), &[(0, "a.csv"), (1, "b.csv")]);
    let out = phsep(&["track", "manifest.json"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn toy_zero_epochs_writes_initial_snapshots_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = phsep(
        &[
            "toy",
            "--datasets",
            "1",
            "--epochs",
            "0",
            "--n-samples",
            "40",
            "--n-features",
            "4",
            "--out-dir",
            "runs",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for variant in ["layer_norm", "plain"] {
        let run = dir.path().join("runs").join(format!("{variant}_000"));
        let manifest = SnapshotManifest::load(&run.join("manifest.json")).unwrap();
        assert_eq!(manifest.epochs.len(), 1);
        assert_eq!(manifest.epochs[0].epoch, 0);
    }
    let summary = std::fs::read_to_string(dir.path().join("runs/summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 3); // header + one row per variant
}

#[test]
fn seeded_commands_are_byte_identical_across_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| -> (Vec<u8>, Vec<u8>) {
        let args: Vec<&str> = match sub {
            "toy" => vec![
                "toy",
                "--datasets",
                "1",
                "--epochs",
                "2",
                "--n-samples",
                "30",
                "--n-features",
                "3",
                "--seed",
                "5",
                "--out-dir",
                "t",
            ],
            "track" => vec![
                "track",
                "t/layer_norm_000/manifest.json",
                "--out",
                "t/r.json",
            ],
            _ => unreachable!(),
        };
        let out = phsep(&args, dir.path());
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let artifact = match sub {
            "toy" => std::fs::read(dir.path().join("t/summary.csv")).unwrap(),
            _ => std::fs::read(dir.path().join("t/r.json")).unwrap(),
        };
        (out.stdout, artifact)
    };
    let toy1 = run("toy");
    let track1 = run("track");
    let toy2 = run("toy");
    let track2 = run("track");
    assert_eq!(toy1, toy2);
    assert_eq!(track1, track2);
}

#[test]
fn config_file_overrides_defaults_and_flags_override_file() {
    let dir = tempfile::tempdir().unwrap();
    write_lines(&dir.path().join("line.csv"), &["dim_0", "0", "1", "3"]);
    write_lines(&dir.path().join("cfg.txt"), &["t = 0.4", "bins = 2"]);
    // normalized persistences are {0.5, 1.0}: t=0.4 → 0, flag t=0.7 → 0.5
    let from_file = stdout_json(&phsep(
        &["--config", "cfg.txt", "h0", "line.csv"],
        dir.path(),
    ));
    assert_eq!(from_file["p_lt_t"].as_f64().unwrap(), 0.0);
    assert_eq!(
        from_file["histogram"]["masses"].as_array().unwrap().len(),
        2
    );
    let from_flag = stdout_json(&phsep(
        &["--config", "cfg.txt", "h0", "line.csv", "--t", "0.7"],
        dir.path(),
    ));
    assert_eq!(from_flag["p_lt_t"].as_f64().unwrap(), 0.5);
}
