//! End-to-end tests of the binary: exit codes, determinism, file formats.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fourstate"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Reads every file in a flat output directory, keyed by file name.
fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    for entry in std::fs::read_dir(dir).expect("readable dir") {
        let entry = entry.expect("entry");
        let name = entry.file_name().into_string().expect("utf8 name");
        files.insert(name, std::fs::read(entry.path()).expect("readable file"));
    }
    files
}

#[test]
fn all_scenarios_pass_and_write_every_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["all", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);

    let files = snapshot(dir.path());
    for scenario in ["entanglement", "interference", "cnot", "chsh", "exchange", "environment"] {
        assert!(files.contains_key(&format!("{scenario}.json")), "missing {scenario}.json");
        assert!(files.contains_key(&format!("{scenario}.txt")), "missing {scenario}.txt");
    }
    for extra in [
        "summary.json",
        "summary.txt",
        "interference.csv",
        "entanglement.csv",
        "ensemble.qce1",
        "psi_plus.state.txt",
        "psi_minus.state.txt",
        "cnot_output.state.txt",
    ] {
        assert!(files.contains_key(extra), "missing {extra}");
    }

    let summary = String::from_utf8(files["summary.txt"].clone()).unwrap();
    assert!(summary.contains("6 scenarios, 0 failed checks -> PASS"));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), summary);

    let json: serde_json::Value =
        serde_json::from_slice(&files["summary.json"]).expect("valid summary json");
    assert_eq!(json["passed"], serde_json::json!(true));
    assert_eq!(json["failed_checks"], serde_json::json!(0));
    assert_eq!(json["scenarios"].as_array().unwrap().len(), 6);
}

#[test]
fn identical_settings_produce_byte_identical_reports() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let d3 = tempfile::tempdir().unwrap();
    assert_eq!(exit_code(&run(&["all", "--out", d1.path().to_str().unwrap()])), 0);
    assert_eq!(exit_code(&run(&["all", "--out", d2.path().to_str().unwrap()])), 0);
    assert_eq!(
        exit_code(&run(&["all", "--parallel", "--out", d3.path().to_str().unwrap()])),
        0
    );
    let s1 = snapshot(d1.path());
    assert_eq!(s1, snapshot(d2.path()), "sequential reruns must match byte for byte");
    assert_eq!(s1, snapshot(d3.path()), "parallel run must match byte for byte");
}

#[test]
fn changing_the_seed_changes_seeded_output_but_not_the_verdict() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    assert_eq!(exit_code(&run(&["environment", "--out", d1.path().to_str().unwrap()])), 0);
    assert_eq!(
        exit_code(&run(&[
            "environment",
            "--seed",
            "123",
            "--out",
            d2.path().to_str().unwrap()
        ])),
        0
    );
    let j1 = std::fs::read(d1.path().join("environment.json")).unwrap();
    let j2 = std::fs::read(d2.path().join("environment.json")).unwrap();
    assert_ne!(j1, j2, "a different seed must change the sampled details");
}

#[test]
fn injected_failure_exits_one_and_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["entanglement", "--inject-failure", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let text = std::fs::read_to_string(dir.path().join("entanglement.txt")).unwrap();
    assert!(text.contains("scenario entanglement: FAIL"));
    assert!(text.contains("plus_expect_t3") && text.contains("-> FAIL"));

    let dir2 = tempfile::tempdir().unwrap();
    let out2 = run(&["all", "--inject-failure", "--out", dir2.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out2), 1);
    let summary = std::fs::read_to_string(dir2.path().join("summary.txt")).unwrap();
    assert!(summary.contains("6 scenarios, 1 failed checks -> FAIL"));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap().to_string();

    let cfg = dir.path().join("bad_key.cfg");
    std::fs::write(&cfg, "bogus=1\n").unwrap();
    let out = run(&["chsh", "--config", cfg.to_str().unwrap(), "--out", &out_dir]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown key"));

    let cfg = dir.path().join("bad_value.cfg");
    std::fs::write(&cfg, "grid=1\n").unwrap();
    let out = run(&["interference", "--config", cfg.to_str().unwrap(), "--out", &out_dir]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["interference", "--delta", "0", "--out", &out_dir]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["frobnicate"]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["chsh", "--config", "/nonexistent/path.cfg", "--out", &out_dir]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn flags_override_config_file_values() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("settings.cfg");
    std::fs::write(&cfg, "# comment\ndelta=2.0\ngrid=500\n").unwrap();
    let out_dir = dir.path().to_str().unwrap();
    assert_eq!(
        exit_code(&run(&[
            "interference",
            "--config",
            cfg.to_str().unwrap(),
            "--delta",
            "3.0",
            "--out",
            out_dir
        ])),
        0
    );
    let json: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("interference.json")).unwrap())
            .unwrap();
    assert_eq!(json["detail"]["delta"], serde_json::json!(3.0));
    assert_eq!(json["detail"]["grid"], serde_json::json!(500));
}

#[test]
fn interference_csv_has_the_documented_shape() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        exit_code(&run(&["interference", "--grid", "10", "--out", dir.path().to_str().unwrap()])),
        0
    );
    let csv = std::fs::read_to_string(dir.path().join("interference.csv")).unwrap();
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "t,rho_1,rho_2,rho_3,rho_4,rho_5,rho_6,rho_7,rho_8,rho_9,rho_10,rho_11,rho_12,rho_13,rho_14,rho_15,expect_T2"
    );
    assert_eq!(lines.count(), 10, "one data row per grid point");
}

#[test]
fn ensemble_dump_has_the_documented_layout() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        exit_code(&run(&[
            "environment",
            "--env-states",
            "3",
            "--out",
            dir.path().to_str().unwrap()
        ])),
        0
    );
    let bytes = std::fs::read(dir.path().join("ensemble.qce1")).unwrap();
    assert_eq!(&bytes[..4], b"QCE1");
    let z = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    assert_eq!(z, 3);
    assert_eq!(bytes.len(), 8 + (1 << 15) * 3 * 8);
}

#[test]
fn state_records_hold_fifteen_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(exit_code(&run(&["entanglement", "--out", dir.path().to_str().unwrap()])), 0);
    for name in ["psi_plus.state.txt", "psi_minus.state.txt"] {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        assert_eq!(text.split_whitespace().count(), 15, "{name} must hold 15 coordinates");
    }
}
