use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liaison"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(args: &[&str], file: &str) -> (i32, String, String) {
    let path = data(file);
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    let out = run(&all);
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn hvector_of_a_fat_point() {
    let (code, out, _) = run_on(&["hvector"], "fat_point_a2.json");
    assert_eq!(code, 0);
    assert!(out.contains("h-vector (1, 3)"), "{out}");
    assert!(out.contains("prime 32003, seed 1"));
}

#[test]
fn hvector_of_a_complete_intersection() {
    let (code, out, _) = run_on(&["hvector"], "ci23.json");
    assert_eq!(code, 0);
    assert!(out.contains("h-vector (1, 2, 2, 1)"), "{out}");
    assert!(out.contains("Cohen-Macaulay: true"));
}

#[test]
fn unit_ideal_is_rejected() {
    let (code, _, err) = run_on(&["hvector"], "unit.json");
    assert_eq!(code, 4);
    assert!(err.contains("unit ideal has no scheme"), "{err}");
}

#[test]
fn two_lines_link() {
    let (code, out, _) = run_on(&["link"], "two_lines.json");
    assert_eq!(code, 0);
    assert!(out.contains("degrees: 1 + 1 = 2"), "{out}");
}

#[test]
fn containment_violation() {
    let (code, _, err) = run_on(&["link"], "not_contained.json");
    assert_eq!(code, 2);
    assert!(err.contains("containment failed"), "{err}");
}

#[test]
fn key_identity() {
    let (code, out, _) = run_on(&["link"], "key_identity.json");
    assert_eq!(code, 0);
    assert!(out.contains("identity holds"), "{out}");
}

#[test]
fn general_link_of_three_lines() {
    let (code, out, _) = run_on(&["link", "--seed", "5"], "general_link.json");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("degrees: 3 + "), "{out}");
}

#[test]
fn one_double_point() {
    let (code, out, _) = run_on(&["fatpoints"], "double_point.json");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("links: 2"));
    assert!(out.contains("final scheme reduced: true"));
    assert!(out.contains("seed 3"), "file seed is used");
}

#[test]
fn reduced_input_needs_no_links() {
    let (code, out, _) = run_on(&["fatpoints"], "reduced_points.json");
    assert_eq!(code, 0);
    assert!(out.contains("links: 0"));
}

#[test]
fn first_double_step_of_two_double_points() {
    let (code, out, _) = run_on(&["fatpoints", "--single"], "two_double_points.json");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[ok] Z'' keeps the other fat points"));
    assert!(!out.contains("FAILED"));
}

#[test]
fn literal_policy_shows_components_at_new_points() {
    let (code, out, _) = run_on(&["fatpoints", "--single", "--policy", "literal"], "two_double_points.json");
    assert_eq!(code, 2);
    assert!(out.contains("[FAILED] Z'' has no component at any R_k"), "{out}");
}

#[test]
fn pair_budget_is_enforced() {
    let (code, _, err) = run_on(&["fatpoints", "--max-pairs", "1000"], "two_double_points.json");
    assert_eq!(code, 1);
    assert!(err.contains("resource limit exceeded"), "{err}");
}

#[test]
fn lift_of_square() {
    let (code, out, _) = run_on(&["lift"], "square_xy.json");
    assert_eq!(code, 0);
    assert!(out.contains("x*y"));
    assert!(out.contains("true (3 points)"), "{out}");
}

#[test]
fn lift_of_non_cm_ideal_reports_it() {
    let (code, out, _) = run_on(&["lift"], "non_cm.json");
    assert_eq!(code, 0);
    assert!(out.contains("Cohen-Macaulay        false (R/I: false)"), "{out}");
}

#[test]
fn lift_of_a_variable() {
    let (code, out, _) = run_on(&["lift"], "single_var.json");
    assert_eq!(code, 0);
    assert!(out.contains("lifted generators:\n  x\n"), "{out}");
}

#[test]
fn embed_a_line() {
    let (code, out, _) = run_on(&["embed"], "embed_line.json");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("extended ring: x0, x1, x2, x3, t"));
    assert!(out.contains("identity=true"));
}

#[test]
fn json_output_is_reproducible() {
    let args = ["link", "--format", "json", "--seed", "9"];
    let (c1, o1, _) = run_on(&args, "key_identity.json");
    let (c2, o2, _) = run_on(&args, "key_identity.json");
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    let v: serde_json::Value = serde_json::from_str(&o1).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["prime"], 32003);
    let args = ["fatpoints", "--single", "--format", "json"];
    assert_eq!(run_on(&args, "two_double_points.json").1, run_on(&args, "two_double_points.json").1);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("liaison-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("h.json");
    let (code, out, _) = run_on(
        &["hvector", "--format", "json", "--out", target.to_str().unwrap()],
        "ci23.json",
    );
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["result"]["h_vector"], serde_json::json!([1, 2, 2, 1]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn prime_flag_overrides_the_file() {
    let (code, out, _) = run_on(&["hvector", "--prime", "101"], "ci23.json");
    assert_eq!(code, 0);
    assert!(out.contains("prime 101"));
}

#[test]
fn configuration_errors() {
    let dir = std::env::temp_dir().join(format!("liaison-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"ring\": {\"vars\": [\"x\"]},\n \"generators\": [\"x +\"]}").unwrap();
    let out = run(&["hvector", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    std::fs::write(&bad, "{\"ring\": {\"vars\": [\"x\"]}\n \"generators\": []}").unwrap();
    let out = run(&["hvector", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["hvector", "/nonexistent/file.json"]).status.code(), Some(4));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(run(&["--prime", "100", "hvector", data("ci23.json").to_str().unwrap()]).status.code(), Some(4));
    std::fs::remove_dir_all(&dir).unwrap();
}
