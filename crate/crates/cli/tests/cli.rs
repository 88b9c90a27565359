use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn mskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mskit"))
        .args(args)
        .env_remove("MSKIT_EPS_LEN")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn generate(dir: &TempDir, file: &str, args: &[&str]) -> String {
    let path = dir.path().join(file).to_string_lossy().into_owned();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let out = mskit(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn write(dir: &TempDir, file: &str, text: &str) -> String {
    let path = dir.path().join(file);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const SQUARE_WITH_DIAGONALS: &str =
    r#"{"vertices":[[0,0],[1,0],[1,1],[0,1]],"edges":[[0,1],[1,2],[2,3],[0,3],[0,2],[1,3]]}"#;

#[test]
fn report_outputs_match_golden_files() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("h2.json", vec!["hex", "2"], "report_h2.json"),
        ("h4.json", vec!["hex", "4"], "report_h4.json"),
        (
            "rp.json",
            vec!["primitive", "RHOMBUS_PENDANT"],
            "report_rhombus_pendant.json",
        ),
    ];
    for (file, args, golden) in cases {
        let path = generate(&dir, file, &args);
        let out = mskit(&["report", &path, "--json"]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), fixture(golden), "{golden}");
    }
}

#[test]
fn verify_hex4_passes_with_json_report() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "h4.json", &["hex", "4"]);
    let out = mskit(&["--json", "verify", &path]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "PASS");
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 17);
    assert!(checks.iter().all(|c| c["status"] == "PASS"), "{report}");
    for key in ["name", "lhs", "rhs", "relation", "status", "margin"] {
        assert!(checks[0].get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["census"]["n"], 60);
    assert_eq!(report["census"]["e"], 135);
    assert!(report["tolerances"]["eps_len"].is_number());
}

#[test]
fn verify_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "r.json", &["random", "--seed", "7", "--k", "4", "--prob", "0.8"]);
    let a = stdout(&mskit(&["--json", "verify", &path]));
    let b = stdout(&mskit(&["--json", "verify", &path]));
    assert_eq!(a, b);
}

#[test]
fn validate_square_with_diagonals() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "square.json", SQUARE_WITH_DIAGONALS);
    let out = mskit(&["validate", &path, "--json"]);
    assert_eq!(code(&out), 1);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let kinds: Vec<&str> = cert["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds.iter().filter(|k| **k == "NON_UNIT_EDGE").count(), 2);
    assert_eq!(kinds.iter().filter(|k| **k == "PROPER_CROSSING").count(), 1);
    assert_eq!(kinds.len(), 3);
}

#[test]
fn gen_hex_rejects_k1() {
    let out = mskit(&["gen", "hex", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid k"));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let self_loop = write(&dir, "loop.json", r#"{"vertices":[[0,0],[1,0]],"edges":[[0,0]]}"#);
    let truncated = write(&dir, "trunc.json", r#"{"vertices":[[0,0"#);
    let missing = dir.path().join("missing.json").to_string_lossy().into_owned();
    for path in [&self_loop, &truncated, &missing] {
        for cmd in ["validate", "report", "discharge", "verify"] {
            assert_eq!(code(&mskit(&[cmd, path])), 2, "{cmd} {path}");
        }
    }
    assert_eq!(code(&mskit(&["gen", "primitive", "PENTAGON"])), 2);
    assert_eq!(
        code(&mskit(&["gen", "random", "--seed", "1", "--k", "2", "--prob", "1.5"])),
        2
    );
    assert_eq!(code(&mskit(&["frobnicate"])), 2);
    assert_eq!(code(&mskit(&["--eps-ang", "1.0", "gen", "hex", "2"])), 2);
}

#[test]
fn env_var_sets_length_tolerance() {
    let dir = TempDir::new().unwrap();
    // edge 0-1 is 1e-6 too long
    let path = write(
        &dir,
        "long.json",
        r#"{"vertices":[[0,0],[1.000001,0]],"edges":[[0,1]]}"#,
    );
    assert_eq!(code(&mskit(&["validate", &path])), 1);
    let out = Command::new(env!("CARGO_BIN_EXE_mskit"))
        .args(["validate", &path])
        .env("MSKIT_EPS_LEN", "1e-5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(code(&mskit(&["--eps-len", "1e-5", "validate", &path])), 0);
}

#[test]
fn discharge_ledger_for_rhombus_pendant() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "rp.json", &["primitive", "RHOMBUS_PENDANT"]);
    let out = mskit(&["--json", "discharge", &path, "--per-element"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let finals: Vec<f64> = v["ledger"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["final"].as_f64().unwrap())
        .collect();
    let oracle = [-2.0, -2.0, -3.0, -2.0, -4.0];
    for (a, b) in finals.iter().zip(oracle) {
        assert!((a - b).abs() < 1e-9, "{finals:?}");
    }
    assert!((v["ledger"]["total_final"].as_f64().unwrap() + 12.0).abs() < 1e-9);
    assert!(v["element_bounds"]["elements"].as_array().unwrap().len() == 7);
}

#[test]
fn discharge_refuses_invalid_graph() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "square.json", SQUARE_WITH_DIAGONALS);
    let out = mskit(&["discharge", &path]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).is_empty());
}

#[test]
fn batch_verify_keeps_input_order() {
    let dir = TempDir::new().unwrap();
    let mut paths = Vec::new();
    for k in [5, 2, 4, 3] {
        paths.push(generate(&dir, &format!("h{k}.json"), &["hex", &k.to_string()]));
    }
    let square = write(&dir, "square.json", SQUARE_WITH_DIAGONALS);
    paths.insert(2, square.clone());
    let mut args = vec!["--json", "verify"];
    args.extend(paths.iter().map(String::as_str));
    let out = mskit(&args);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let files: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["file"].as_str().unwrap())
        .collect();
    assert_eq!(files, paths.iter().map(String::as_str).collect::<Vec<_>>());
    let verdicts: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verdict"].as_str().unwrap())
        .collect();
    assert_eq!(verdicts, ["PASS", "PASS", "FAIL", "PASS", "PASS"]);
    assert_eq!(v[2]["file"], square.as_str());
}

#[test]
fn empty_graph_is_vacuous() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "empty.json", r#"{"vertices":[],"edges":[]}"#);
    let out = mskit(&["--json", "verify", &path]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("VACUOUS_PASS"));
    let svg = dir.path().join("empty.svg");
    assert_eq!(code(&mskit(&["svg", &path, "-o", svg.to_str().unwrap()])), 0);
    assert!(std::fs::read_to_string(svg).unwrap().contains("<svg"));
}

#[test]
fn gen_writes_to_stdout_and_round_trips() {
    let out = mskit(&["gen", "primitive", "TRIANGLE"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(v["metadata"]["name"], "TRIANGLE");

    let a = stdout(&mskit(&["gen", "random", "--seed", "3", "--k", "3", "--prob", "0.6"]));
    let b = stdout(&mskit(&["gen", "random", "--seed", "3", "--k", "3", "--prob", "0.6"]));
    assert_eq!(a, b);
}

#[test]
fn svg_of_hex4() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "h4.json", &["hex", "4"]);
    let svg = dir.path().join("h4.svg");
    let out = mskit(&["svg", &path, "-o", svg.to_str().unwrap(), "--scale", "30"]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line").count(), 135);
    assert!(Path::new(&svg).exists());
}

#[test]
fn text_mode_verify_lists_every_check() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "h3.json", &["hex", "3"]);
    let out = stdout(&mskit(&["verify", &path]));
    for name in ["matchstick_validation", "discharge_bound", "theorem", "remark_ratio"] {
        assert!(out.contains(name), "{out}");
    }
}
