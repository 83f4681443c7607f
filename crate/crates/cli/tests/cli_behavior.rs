//! End-to-end checks of the binary: exit codes, artifact contents, and the
//! determinism criterion (criterion 9) across worker counts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use micp_workbench::constructions::polygon_tower::side_count;

const BIN: &str = env!("CARGO_BIN_EXE_micp-workbench");

fn temp_dir(case: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wb-cli-{}-{case}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn read(path: &Path) -> Vec<u8> {
    fs::read(path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

#[test]
fn criterion_9_verify_reports_are_byte_identical_across_worker_counts() {
    for construction in ["lemma2", "polygon-tower", "box-tower"] {
        let mut outputs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for threads in ["1", "4"] {
            let dir = temp_dir(&format!("det-{construction}-{threads}"));
            let out = run(
                &[
                    "verify",
                    "--construction",
                    construction,
                    "--seed",
                    "11",
                    "--out",
                    dir.to_str().unwrap(),
                ],
                &[("WORKBENCH_THREADS", threads)],
            );
            assert!(
                out.status.success(),
                "verify {construction} failed: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            outputs.push((read(&dir.join("summary.json")), read(&dir.join("probes.csv"))));
            let _ = fs::remove_dir_all(&dir);
        }
        assert_eq!(outputs[0].0, outputs[1].0, "{construction} summary.json differs");
        assert_eq!(outputs[0].1, outputs[1].1, "{construction} probes.csv differs");
    }
    println!(
        "criterion 9: PASS (summary.json and probes.csv byte-identical for 1 and 4 workers)"
    );
}

#[test]
fn unknown_names_are_rejected_with_exit_2_before_any_work() {
    let dir = temp_dir("unknown-construction");
    let out = run(
        &["verify", "--construction", "pentagon-tower", "--out", dir.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.exists(), "output directory must not be created");

    let out = run(
        &[
            "verify",
            "--construction",
            "lemma2",
            "--probes",
            "cone-constancy,unheard-of",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unheard-of"));
    assert!(!dir.exists());

    // Formats are validated the same way.
    let out = run(
        &[
            "construct",
            "--construction",
            "box-tower",
            "--format",
            "svg",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.exists());
}

#[test]
fn io_failures_exit_3_with_the_offending_path() {
    // A regular file where a directory component is needed.
    let blocker = std::env::temp_dir().join(format!("wb-cli-{}-blocker", std::process::id()));
    fs::write(&blocker, b"occupied").unwrap();
    let nested = blocker.join("run");
    let out = run(
        &["verify", "--construction", "box-tower", "--out", nested.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wb-cli"));
    let _ = fs::remove_file(&blocker);

    // Export needs a prior run directory.
    let missing = temp_dir("export-missing");
    let out = run(
        &["export", "--construction", "box-tower", "--out", missing.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing run directory"));
}

#[test]
fn construct_writes_the_documented_instance_shapes() {
    // Polygon tower: five bodies with the certified side counts, to scale.
    let dir = temp_dir("construct-tower");
    let out = run(
        &[
            "construct",
            "--construction",
            "polygon-tower",
            "--i-max",
            "5",
            "--format",
            "json,svg",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let instance: serde_json::Value =
        serde_json::from_slice(&read(&dir.join("instance.json"))).unwrap();
    assert_eq!(instance["schema"], 1);
    assert_eq!(instance["construction"], "polygon-tower");
    let bodies = instance["bodies"].as_array().unwrap();
    assert_eq!(bodies.len(), 5);
    for (idx, body) in bodies.iter().enumerate() {
        let i = idx as u64 + 1;
        assert_eq!(body["sides"].as_u64().unwrap(), side_count(i).unwrap());
        assert_eq!(
            body["vertices"].as_array().unwrap().len() as u64,
            side_count(i).unwrap()
        );
    }
    let svg = String::from_utf8(read(&dir.join("figure.svg"))).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 5);
    assert_eq!(svg.matches("<circle").count(), 5, "one lattice marker per body");
    let _ = fs::remove_dir_all(&dir);

    // Parabola tower over z1 = 0..3: four boundary slices with their rays.
    let dir = temp_dir("construct-lemma2");
    let out = run(
        &[
            "construct",
            "--construction",
            "lemma2",
            "--z-box",
            "0,3",
            "--format",
            "json,svg",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let instance: serde_json::Value =
        serde_json::from_slice(&read(&dir.join("instance.json"))).unwrap();
    assert_eq!(instance["schema"], 1);
    let slices = instance["slices"].as_array().unwrap();
    let rays: Vec<&serde_json::Value> =
        slices.iter().filter(|s| s["kind"] == "ray").collect();
    assert_eq!(rays.len(), 4);
    let directions = instance["cone_directions"].as_array().unwrap();
    assert_eq!(directions.len(), 4);
    assert_eq!(directions[2], serde_json::json!([0, 0, 3, 2]));
    assert!(slices.iter().any(|s| s["kind"] == "wedge"));
    let _ = fs::remove_dir_all(&dir);

    // Box tower: eleven congruent squares by default.
    let dir = temp_dir("construct-box");
    let out = run(
        &["construct", "--construction", "box-tower", "--out", dir.to_str().unwrap()],
        &[],
    );
    assert!(out.status.success());
    let instance: serde_json::Value =
        serde_json::from_slice(&read(&dir.join("instance.json"))).unwrap();
    let slices = instance["slices"].as_array().unwrap();
    assert_eq!(slices.len(), 11);
    let first = &slices[0]["vertices"];
    for slice in slices {
        assert_eq!(&slice["vertices"], first, "slices must be congruent");
    }
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn export_tables_come_from_prior_runs() {
    let dir = temp_dir("export-roundtrip");

    // construct alone: closed-form table plus a header-only slack table.
    let out = run(
        &[
            "construct",
            "--construction",
            "polygon-tower",
            "--i-max",
            "4",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let out = run(
        &[
            "export",
            "--construction",
            "polygon-tower",
            "--i-max",
            "4",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let table = String::from_utf8(read(&dir.join("tower_table.csv"))).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("i,r,g,area,h"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&first[..3], &["1", "1/4", "4"]);
    let slacks = String::from_utf8(read(&dir.join("probe_slacks.csv"))).unwrap();
    assert_eq!(slacks, "probe,slack\n", "no verify run yet, so header only");

    // After verify the probe slacks fill in.
    let out = run(
        &[
            "verify",
            "--construction",
            "polygon-tower",
            "--i-max",
            "4",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let out = run(
        &[
            "export",
            "--construction",
            "polygon-tower",
            "--i-max",
            "4",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let slacks = String::from_utf8(read(&dir.join("probe_slacks.csv"))).unwrap();
    assert!(slacks.lines().count() > 1);
    assert!(slacks.contains("validity-sweep"));

    // An empty probe selection keeps the table header-only.
    let out = run(
        &[
            "export",
            "--construction",
            "polygon-tower",
            "--i-max",
            "4",
            "--probes",
            "",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let slacks = String::from_utf8(read(&dir.join("probe_slacks.csv"))).unwrap();
    assert_eq!(slacks, "probe,slack\n");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn verify_summary_records_every_selected_probe() {
    let dir = temp_dir("verify-summary");
    let out = run(
        &[
            "verify",
            "--construction",
            "box-tower",
            "--probes",
            "volume-concavity,translation-classes",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let summary: serde_json::Value =
        serde_json::from_slice(&read(&dir.join("summary.json"))).unwrap();
    assert_eq!(summary["schema"], 1);
    assert_eq!(summary["overall_pass"], true);
    let probes = summary["probes"].as_array().unwrap();
    assert_eq!(probes.len(), 2);
    assert_eq!(probes[0]["probe"], "volume-concavity");
    assert_eq!(probes[1]["probe"], "translation-classes");
    assert!(probes.iter().all(|p| p["passed"] == true));
    let classes = summary["shape_classes"].as_array().unwrap();
    assert_eq!(classes[0]["classes"].as_array().unwrap().len(), 1);

    // Wall time is stdout-only; the artifacts must not mention it.
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("verify box-tower: pass in"));
    let raw = String::from_utf8(read(&dir.join("summary.json"))).unwrap();
    assert!(!raw.contains("time"));
    let _ = fs::remove_dir_all(&dir);
}
