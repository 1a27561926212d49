use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supertree"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn supertree")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn construct(dir: &Path, file: &str, family: &str, r: &str, params: &str) -> String {
    let path = dir.join(file);
    let path_str = path.to_str().unwrap().to_string();
    let out = run(&[
        "construct",
        "--family",
        family,
        "--r",
        r,
        "--params",
        params,
        "-o",
        &path_str,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path_str
}

fn terms(v: &Value) -> Vec<(u64, String)> {
    v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["exp"].as_u64().unwrap(),
                t["coef"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn w6_matching_polynomial() {
    let dir = TempDir::new().unwrap();
    let w = construct(dir.path(), "w6.json", "W", "3", "6");
    let expected = vec![(13, "1".into()), (10, "-6".into()), (7, "8".into())];

    let out = run(&["matchpoly", &w]);
    assert!(out.status.success());
    assert_eq!(terms(&json(&out)), expected);

    let out = run(&["matchpoly", "--oracle", &w]);
    assert_eq!(terms(&json(&out)), expected);

    let out = run(&["matchpoly", "--reduced", &w]);
    let v = json(&out);
    assert_eq!(v["z"], 7);
    assert_eq!(v["nu"], 2);
}

#[test]
fn family_names_accept_separators() {
    let out = run(&[
        "construct",
        "--family",
        "loose-path",
        "--r",
        "2",
        "--params",
        "2",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["n"], 3);
}

#[test]
fn rho_and_me_of_p2() {
    let dir = TempDir::new().unwrap();
    let p = construct(dir.path(), "p2.json", "LoosePath", "2", "2");
    let rho: f64 = String::from_utf8(run(&["rho", &p]).stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((rho - std::f64::consts::SQRT_2).abs() < 1e-12);
    let me: f64 = String::from_utf8(run(&["me", &p]).stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((me - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
}

#[test]
fn cospectral_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p1 = construct(dir.path(), "p1.json", "LoosePath", "3", "1");
    let p2 = construct(dir.path(), "p2.json", "LoosePath", "3", "2");
    let relabeled = dir.path().join("p2b.json");
    std::fs::write(&relabeled, r#"{"r":3,"n":5,"edges":[[4,3,0],[0,1,2]]}"#).unwrap();
    let relabeled = relabeled.to_str().unwrap();

    let same = run(&["cospectral", &p2, relabeled]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(json(&same)["phi_equal"], true);

    let differ = run(&["cospectral", &p1, &p2]);
    assert_eq!(differ.status.code(), Some(1));
    assert_eq!(json(&differ)["phi_equal"], false);
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"r":3,"n":4,"edges":[[0,1,5]]}"#).unwrap();
    let out = run(&["rho", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let missing = dir.path().join("missing.json");
    assert_eq!(
        run(&["matchpoly", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["suite", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn suite_is_deterministic_and_cases_rerun() {
    let args = [
        "suite", "--name", "coalesce", "--r", "2,3", "--trials", "2", "--seed", "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);

    let report = json(&a);
    assert_eq!(report["passed"], true);
    let cases = report["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    let case = &cases[cases.len() - 1];
    let id = case["id"].as_str().unwrap();
    assert!(case["repro"].as_str().unwrap().contains(id));

    let mut rerun_args: Vec<&str> = args.to_vec();
    rerun_args.extend(["--case", id]);
    let rerun = json(&run(&rerun_args));
    let rerun_cases = rerun["cases"].as_array().unwrap();
    assert_eq!(rerun_cases.len(), 1);
    assert_eq!(&rerun_cases[0], case);
}
