//! End-to-end tests of the binary: JSON in, JSON out, exit codes.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symcone"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON value")
}

const DIAG42: &str = r#"{"algebra":{"kind":"sym","n":2},"data":[[4,0],[0,2]]}"#;
const UNIT2: &str = r#"{"algebra":{"kind":"sym","n":2},"data":[[1,0],[0,1]]}"#;

#[test]
fn dist_matches_log4() {
    let out = run(&["dist", "--metric", "thompson", DIAG42, UNIT2]);
    let v = stdout_json(&out);
    assert_eq!(v["distance"].as_f64().unwrap(), 4f64.ln());
    // 17 significant digits on the wire
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1.3862943611198906e0"), "{text}");
}

#[test]
fn gauge_and_mean() {
    let v = stdout_json(&run(&["gauge", DIAG42, UNIT2]));
    assert_eq!(v["gauge"].as_f64().unwrap(), 4.0);

    let v = stdout_json(&run(&["mean", DIAG42, UNIT2]));
    assert_eq!(v["data"][0][0].as_f64().unwrap(), 2.0);
}

#[test]
fn geodesic_emits_json_lines() {
    let out = run(&["geodesic", UNIT2, DIAG42, "--n", "4"]);
    assert!(out.status.success());
    let lines: Vec<_> = String::from_utf8_lossy(&out.stdout)
        .trim()
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(lines.len(), 5);
    let row: serde_json::Value = serde_json::from_str(&lines[2]).unwrap();
    assert_eq!(row["t"].as_f64().unwrap(), 0.5);
    let d = row["dist_from_a"].as_f64().unwrap();
    assert!((d - 0.5 * 4f64.ln()).abs() < 1e-10);
}

#[test]
fn convergence_is_constant_on_commuting_inputs() {
    let a = r#"{"algebra":{"kind":"vector","n":3},"data":[0.4,-0.2,0.9]}"#;
    let b = r#"{"algebra":{"kind":"vector","n":3},"data":[-0.1,0.3,0.2]}"#;
    let out = run(&["convergence", a, b, "--n", "6"]);
    assert!(out.status.success());
    for line in String::from_utf8_lossy(&out.stdout).trim().lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(row["error"].as_f64().unwrap() < 1e-12, "{line}");
    }
}

#[test]
fn classify_and_witness() {
    let v = stdout_json(&run(&["classify", "--metric", "hilbert", UNIT2, DIAG42]));
    assert_eq!(v["unique"], true);
    let v = stdout_json(&run(&["classify", "--metric", "thompson", UNIT2, DIAG42]));
    assert_eq!(v["unique"], false);
    assert!(v["witness"].is_object());

    let v = stdout_json(&run(&["witness", UNIT2, DIAG42]));
    assert_eq!(v["data"][0][0].as_f64().unwrap(), 2.0);
    assert_eq!(v["data"][1][1].as_f64().unwrap(), 2.0);

    // unique pair: no witness, invalid-input exit code
    let recip = r#"{"algebra":{"kind":"sym","n":2},"data":[[2,0],[0,0.5]]}"#;
    let out = run(&["witness", UNIT2, recip]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr carries JSON");
    assert!(err["error"].as_str().unwrap().contains("unique"));
}

#[test]
fn factorize_echoes_descriptor() {
    let desc = r#"{
        "metric": "H",
        "b": {"algebra":{"kind":"sym","n":3},"data":[[2,0,0],[0,1,0],[0,0,1]]},
        "p": null,
        "epsilon": -1,
        "iso": {"kind": "identity"}
    }"#;
    let v = stdout_json(&run(&["factorize", "--metric", "hilbert", "--map", desc]));
    assert_eq!(v["metric"], "H");
    assert_eq!(v["epsilon"].as_i64().unwrap(), -1);
    assert_eq!(v["iso"]["kind"], "identity");
    // b is returned trace-normalized on the ray of the input
    let b00 = v["b"]["data"][0][0].as_f64().unwrap();
    let b11 = v["b"]["data"][1][1].as_f64().unwrap();
    assert!((b00 / b11 - 2.0).abs() < 1e-8);

    // metric flag disagreeing with the file is an input error
    let out = run(&["factorize", "--metric", "thompson", "--map", desc]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn linearize_inversion_is_minus_identity() {
    let desc = r#"{
        "metric": "T",
        "b": {"algebra":{"kind":"sym","n":2},"data":[[1,0],[0,1]]},
        "p": {"algebra":{"kind":"sym","n":2},"data":[[0,0],[0,0]]},
        "epsilon": null,
        "iso": {"kind": "identity"}
    }"#;
    let v = stdout_json(&run(&["linearize", "--map", desc]));
    assert_eq!(v["metric"], "T");
    assert!(v["residual"].as_f64().unwrap() < 1e-9);
    let m = v["matrix"].as_array().unwrap();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            let want = if i == j { -1.0 } else { 0.0 };
            assert!((x.as_f64().unwrap() - want).abs() < 1e-9);
        }
    }
}

#[test]
fn chain_and_simplex() {
    let p = r#"{"algebra":{"kind":"sym","n":3},"data":[[1,0,0],[0,0,0],[0,0,0]]}"#;
    let q = r#"{"algebra":{"kind":"sym","n":3},"data":[[0,0,0],[0,1,0],[0,0,0]]}"#;
    let r = r#"{"algebra":{"kind":"sym","n":3},"data":[[0,0,0],[0,0,0],[0,0,1]]}"#;
    let v = stdout_json(&run(&["chain", p, q]));
    assert_eq!(v["chain"].as_array().unwrap().len(), 2);

    let center = r#"{"algebra":{"kind":"sym","n":3},"data":[[0.3333,0,0],[0,0.3333,0],[0,0,0.3334]]}"#;
    let v = stdout_json(&run(&["simplex", p, q, r, center]));
    assert_eq!(v["position"], "interior");

    // spin inputs error out with the numerical-failure code for chains
    let s1 = r#"{"algebra":{"kind":"spin","dim":3},"data":{"h":[0.5,0,0],"t":0.5}}"#;
    let s2 = r#"{"algebra":{"kind":"spin","dim":3},"data":{"h":[-0.5,0,0],"t":0.5}}"#;
    let out = run(&["chain", s1, s2]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn theta_reports_complementation_for_inversion() {
    let desc = r#"{
        "metric": "H",
        "b": {"algebra":{"kind":"sym","n":3},"data":[[1,0,0],[0,1,0],[0,0,1]]},
        "epsilon": -1,
        "iso": {"kind": "identity"}
    }"#;
    let p = r#"{"algebra":{"kind":"sym","n":3},"data":[[1,0,0],[0,0,0],[0,0,0]]}"#;
    let v = stdout_json(&run(&["theta", "--map", desc, p]));
    // ray inversion sends [p] to [p^perp]
    let mapped = &v["pairs"][0]["theta_p"]["data"];
    assert_eq!(mapped[0][0].as_f64().unwrap(), 0.0);
    assert_eq!(mapped[1][1].as_f64().unwrap(), 1.0);
    assert_eq!(mapped[2][2].as_f64().unwrap(), 1.0);
}

#[test]
fn output_flag_writes_file_and_roundtrips() {
    let dir = std::env::temp_dir().join(format!("symcone-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mean.json");
    let out = run(&["mean", DIAG42, UNIT2, "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // parse(print(x)) is bit-exact
    let reparsed = stdout_json(&run(&["mean", DIAG42, UNIT2]));
    assert_eq!(v, reparsed);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_filtered_check_passes() {
    let out = run(&["verify", "--seed", "7", "--check", "extreme-points"]);
    assert!(out.status.success());
    let row: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stdout).trim()).unwrap();
    assert_eq!(row["pass"], true);
}

#[test]
fn theta_output_is_deterministic_for_a_seed() {
    let desc = r#"{
        "metric": "H",
        "b": {"algebra":{"kind":"sym","n":3},"data":[[1.5,0.2,0],[0.2,1,0],[0,0,1]]},
        "epsilon": 1,
        "iso": {"kind": "identity"}
    }"#;
    let a = run(&["theta", "--map", desc, "--seed", "99", "--n", "4"]);
    let b = run(&["theta", "--map", desc, "--seed", "99", "--n", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn stdin_input_works() {
    use std::io::Write as _;
    let mut child = bin()
        .args(["gauge", "-", UNIT2])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(DIAG42.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["gauge"].as_f64().unwrap(), 4.0);
}
