//! End-to-end tests of the `conekit` binary: exit codes, JSON output on
//! stdout, and human summaries on stderr.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn conekit<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_conekit"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process terminated by signal")
}

fn orthant_cone(dir: &TempDir) -> PathBuf {
    write(dir, "cone.json", r#"{"kind": "orthant", "dim": 2}"#)
}

fn weighted_line(dir: &TempDir) -> PathBuf {
    write(
        dir,
        "line.json",
        r#"{"cone": {"kind": "orthant", "dim": 2},
            "space": {"type": "weighted_line", "w": [1.0, 2.0]}}"#,
    )
}

fn two_point_table(dir: &TempDir) -> PathBuf {
    write(
        dir,
        "table.json",
        r#"{"cone": {"kind": "orthant", "dim": 2},
            "space": {"type": "table",
                      "points": ["a", "b"],
                      "p": [[[0.0, 0.0], [1.0, 2.0]],
                            [[1.0, 2.0], [0.0, 0.0]]]}}"#,
    )
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_cone_passes_on_the_orthant() {
    let dir = TempDir::new().unwrap();
    let cone = orthant_cone(&dir);
    let out = conekit(["check-cone", path_arg(&cone), "--samples", "300"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["kind"], "orthant");
    let checks = json["report"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["failures"] == 0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("check-cone: PASS"));
}

#[test]
fn check_cone_flags_the_unpointed_line_cone() {
    let dir = TempDir::new().unwrap();
    let cone = write(
        &dir,
        "line_cone.json",
        r#"{"kind": "halfspace", "rows": [[1.0, 0.0], [-1.0, 0.0]]}"#,
    );
    let out = conekit(["check-cone", path_arg(&cone), "--samples", "300"]);
    assert_eq!(exit_code(&out), 1);
    let json = stdout_json(&out);
    let pointed = json["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["item"] == "pointed")
        .unwrap();
    assert!(pointed["failures"].as_u64().unwrap() > 0);
    assert!(pointed["witness"].is_object());
}

#[test]
fn check_lemmas_passes_on_the_lorentz_cone() {
    let dir = TempDir::new().unwrap();
    let cone = write(&dir, "lorentz.json", r#"{"kind": "lorentz", "dim": 3}"#);
    let out = conekit(["check-lemmas", path_arg(&cone), "--samples", "400"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert!(json["lemma1"]["checks"].as_array().unwrap().len() >= 7);
    assert!(json["lemma2"]["checks"].as_array().unwrap().len() >= 5);
}

#[test]
fn induce_emits_the_distance_table() {
    let dir = TempDir::new().unwrap();
    let space = two_point_table(&dir);
    let out_file = dir.path().join("dp.json");
    let out = conekit([
        "induce",
        path_arg(&space),
        "--pairs",
        path_arg(&out_file),
        "--samples",
        "200",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    // d_p(a, b) = xi_e((1, 2)) = 2 with the default e = (1, 1).
    assert_eq!(json["induced"]["d"][0][1], 2.0);
    assert_eq!(json["induced"]["d"][0][0], 0.0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(written["d"], json["induced"]["d"]);
}

#[test]
fn induce_emits_the_line_scale() {
    let dir = TempDir::new().unwrap();
    let space = weighted_line(&dir);
    let out = conekit(["induce", path_arg(&space), "--samples", "300"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["induced"]["scale"], 2.0);
}

#[test]
fn verify_passes_for_a_contraction_and_fails_otherwise() {
    let dir = TempDir::new().unwrap();
    let space = weighted_line(&dir);
    let good = write(&dir, "good.json", r#"{"type": "affine", "a": 0.5, "b": 1.0}"#);
    let phi = write(&dir, "phi.json", r#"{"kind": "linear", "lambda": 0.5}"#);
    let out = conekit([
        "verify",
        path_arg(&space),
        path_arg(&good),
        path_arg(&phi),
        "--samples",
        "2000",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    for section in ["vector_contraction", "scalar_contraction", "implication"] {
        let checks = json[section]["checks"].as_array().unwrap();
        assert!(checks.iter().all(|c| c["failures"] == 0), "{section}");
    }

    // A 0.9-Lipschitz map cannot satisfy a 0.5 bound; the implication
    // still holds (vector failures are vacuous for it).
    let bad = write(&dir, "bad.json", r#"{"type": "affine", "a": 0.9, "b": 1.0}"#);
    let out = conekit([
        "verify",
        path_arg(&space),
        path_arg(&bad),
        path_arg(&phi),
        "--samples",
        "2000",
    ]);
    assert_eq!(exit_code(&out), 1);
    let json = stdout_json(&out);
    let vector = &json["vector_contraction"]["checks"][0];
    assert!(vector["failures"].as_u64().unwrap() > 0);
    assert!(vector["witness"].is_object());
    let implication = &json["implication"]["checks"][0];
    assert_eq!(implication["failures"], 0);
}

#[test]
fn solve_converges_on_the_line() {
    let dir = TempDir::new().unwrap();
    let space = weighted_line(&dir);
    let map = write(&dir, "map.json", r#"{"type": "affine", "a": 0.5, "b": 1.0}"#);
    let out = conekit([
        "solve",
        path_arg(&space),
        path_arg(&map),
        "--x0",
        "-100",
        "--tol",
        "1e-10",
        "--max-iter",
        "100",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["converged"], true);
    let fp = json["fixed_point"].as_f64().unwrap();
    assert!((fp - 2.0).abs() <= 1e-8);
    assert!(json["iterations"].as_u64().unwrap() <= 60);
    assert!(String::from_utf8_lossy(&out.stderr).contains("converged"));
}

#[test]
fn solve_reports_non_convergence_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let space = two_point_table(&dir);
    let swap = write(
        &dir,
        "swap.json",
        r#"{"type": "assignment", "images": ["b", "a"]}"#,
    );
    let out = conekit([
        "solve",
        path_arg(&space),
        path_arg(&swap),
        "--x0",
        "a",
        "--max-iter",
        "25",
    ]);
    assert_eq!(exit_code(&out), 1);
    let json = stdout_json(&out);
    assert_eq!(json["converged"], false);
    assert!(json.get("fixed_point").is_none());
    assert_eq!(json["iterations"], 25);
}

#[test]
fn check_c_passes_for_a_constant_map() {
    let dir = TempDir::new().unwrap();
    let space = weighted_line(&dir);
    let f = write(&dir, "f.json", r#"{"type": "affine", "a": 0.0, "b": 1.0}"#);
    let g = write(&dir, "g.json", r#"{"type": "affine", "a": 0.5, "b": 0.0}"#);
    let phi = write(&dir, "phi.json", r#"{"kind": "linear", "lambda": 0.5}"#);
    let out = conekit([
        "check-c",
        path_arg(&space),
        path_arg(&f),
        path_arg(&g),
        path_arg(&phi),
        "--samples",
        "500",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["condition_c"]["checks"][0]["failures"], 0);
    assert_eq!(json["condition_c1"]["checks"][0]["failures"], 0);
    assert_eq!(json["remark23"]["checks"][0]["failures"], 0);
    assert_eq!(json["cases"].as_array().unwrap().len(), 200);
    assert_eq!(json["cases_truncated"], true);
}

#[test]
fn check_c_fails_when_no_case_witnesses() {
    let dir = TempDir::new().unwrap();
    let space = weighted_line(&dir);
    // f = g: the candidates degenerate and cannot bound p(fx, fy).
    let f = write(&dir, "f.json", r#"{"type": "affine", "a": 0.5, "b": 1.0}"#);
    let phi = write(&dir, "phi.json", r#"{"kind": "linear", "lambda": 0.5}"#);
    let out = conekit([
        "check-c",
        path_arg(&space),
        path_arg(&f),
        path_arg(&f),
        path_arg(&phi),
        "--samples",
        "300",
    ]);
    assert_eq!(exit_code(&out), 1);
    let json = stdout_json(&out);
    assert!(json["condition_c"]["checks"][0]["failures"].as_u64().unwrap() > 0);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let out = conekit(["check-cone", "no_such_file.json"]);
    assert_eq!(exit_code(&out), 2);

    let bad = write(&dir, "bad.json", r#"{"kind": "torus", "dim": 2}"#);
    let out = conekit(["check-cone", path_arg(&bad)]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    // A structurally valid document describing an impossible object:
    // componentwise comparison on a non-orthant cone.
    let space = write(
        &dir,
        "lorentz_line.json",
        r#"{"cone": {"kind": "lorentz", "dim": 3},
            "space": {"type": "weighted_line", "w": [0.0, 0.0, 1.0]}}"#,
    );
    let map = write(&dir, "map.json", r#"{"type": "affine", "a": 0.5, "b": 0.0}"#);
    let phi = write(
        &dir,
        "phi.json",
        r#"{"kind": "componentwise",
            "components": [{"type": "scale", "c": 0.5},
                           {"type": "scale", "c": 0.5},
                           {"type": "scale", "c": 0.5}]}"#,
    );
    let out = conekit([
        "verify",
        path_arg(&space),
        path_arg(&map),
        path_arg(&phi),
    ]);
    assert_eq!(exit_code(&out), 2);
}
