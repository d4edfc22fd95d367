use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pseudoquad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudoquad"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn feasible(doc: &Value) -> Vec<&Value> {
    doc["candidates"]["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["feasible"] == true)
        .collect()
}

const ROBOT_ELLIPTIC: &str = r#"{
  "dimension": 3,
  "satellites": [
    {"position": [0, 0, 3], "pseudorange": 3.8166247903554},
    {"position": [4, 0, 3], "pseudorange": 4.858898943540674},
    {"position": [0, 4, 3], "pseudorange": 4.858898943540674}
  ],
  "constraint": {"base": [0, 0, 0], "basis": [[1, 0, 0], [0, 1, 0]]}
}"#;

#[test]
fn solve_cone_gives_single_point() {
    let out = run(&["solve", data("cone.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["count"], "one");
    let x = &doc["solutions"][0]["x"];
    for i in 0..3 {
        assert!(x[i].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn no_solutions_exits_two() {
    let out = run(&["solve", data("satellites_empty.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["count"], "zero");
    assert_eq!(doc["q_sat"]["descriptor"]["kind"], "hyperboloid_one_sheet");
}

#[test]
fn malformed_input_exits_one_without_output() {
    let path = scratch("malformed.json", r#"{"dimension": 3, "satellites": [}"#);
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let path = scratch(
        "mismatch.json",
        r#"{"dimension": 3, "satellites": [{"position": [1, 2], "pseudorange": 1}]}"#,
    );
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn robot_below_circumcenter_has_one_candidate() {
    let out = run(&[
        "intersect",
        data("robot_below_circumcenter.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let all = doc["candidates"]["candidates"].as_array().unwrap();
    assert_eq!(all.len(), 1);
    let x = &all[0]["x"];
    assert!((x[0].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((x[1].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(x[2].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn elliptic_robot_keeps_one_of_two() {
    let path = scratch("elliptic.json", ROBOT_ELLIPTIC);
    let out = run(&["intersect", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["candidates"]["candidates"].as_array().unwrap().len(), 2);
    assert_eq!(feasible(&doc).len(), 1);
}

#[test]
fn intersect_needs_a_constraint() {
    let out = run(&["intersect", data("cone.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn plane_missing_the_solution_exits_two() {
    // The only solution is the origin.
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(data("cone.json")).unwrap()).unwrap();
    doc["constraint"] = serde_json::json!({"base": [0, 0, 5], "basis": [[1, 0, 0], [0, 1, 0]]});
    let path = scratch("missing.json", &doc.to_string());
    let out = run(&["intersect", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert!(doc["candidates"]["candidates"]
        .as_array()
        .unwrap()
        .is_empty());
    assert!(doc["candidates"]["diagnostic"].is_string());
    assert!(String::from_utf8_lossy(&out.stderr).contains("note:"));
    assert!(!String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn noiseless_simulation_has_zero_spread() {
    let text = std::fs::read_to_string(data("ocean_three_boats.json"))
        .unwrap()
        .replace(r#""sigma": 0.01"#, r#""sigma": 0"#)
        .replace(r#"[0.75, 5, 0]"#, r#"[0.5, 1, 0]"#);
    let path = scratch("noiseless.json", &text);
    let out = run(&[
        "simulate",
        path.to_str().unwrap(),
        "--trials",
        "4",
        "--resolution",
        "41",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stats = &json(&out)["stats"];
    assert_eq!(stats["trials"], 4);
    assert_eq!(stats["std_error"].as_f64().unwrap(), 0.0);
    // The truth is a grid point.
    assert!(stats["mean_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn surface_csv_has_one_row_per_cell() {
    let csv = std::env::temp_dir().join(format!("pseudoquad-surface-{}.csv", std::process::id()));
    let out = run(&[
        "simulate",
        data("ocean_aircraft.json").to_str().unwrap(),
        "--trials",
        "2",
        "--resolution",
        "11",
        "--surface",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 11 * 11 + 1);
}

#[test]
fn simulation_is_deterministic() {
    let config = data("ocean_aircraft.json");
    let args = [
        "simulate",
        config.to_str().unwrap(),
        "--trials",
        "8",
        "--resolution",
        "31",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    other.extend(["--seed", "99"]);
    assert_ne!(run(&other).stdout, a.stdout);
}

#[test]
fn classify_omits_the_solution_set() {
    let out = run(&["classify", data("cone.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["command"], "classify");
    assert!(doc.get("solution_set").is_none());
    assert!(doc.get("q_sol").is_some());
}
