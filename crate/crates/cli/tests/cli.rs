use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn crescent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crescent")).args(args).output().expect("run crescent")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t8.json");
    let out = crescent(&["construct", "table", "--n", "8", "--out", table.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let out = crescent(&["check", table.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["strong_crescent"], true);
    assert_eq!(v["size"], 8);

    let collinear = write(dir.path(), "line.json", r#"{"norm": "linf", "points": [[0, 0], [1, 1], [2, 2], [0, 5]]}"#);
    let out = crescent(&["check", &collinear]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["strong_crescent"], false);

    let bad = write(dir.path(), "bad.json", r#"{"norm": "linf", "points": [[0, 0"#);
    assert_eq!(code(&crescent(&["check", &bad])), 2);
    let dup = write(dir.path(), "dup.json", r#"{"norm": "linf", "points": [[0, 0], [0, 0]]}"#);
    assert_eq!(code(&crescent(&["check", &dup])), 2);
    assert_eq!(code(&crescent(&["check", "/nonexistent/file.json"])), 2);

    // the same points read under L1 are no longer a crescent
    assert_eq!(code(&crescent(&["check", table.to_str().unwrap(), "--norm", "l1"])), 1);
    assert_eq!(code(&crescent(&["check", table.to_str().unwrap(), "--norm", "bogus"])), 2);
}

#[test]
fn search_first_and_absence() {
    let out = crescent(&["search", "--preset", "linf-table"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["configurations"].as_array().unwrap().len(), 1);

    let out = crescent(&["search", "--norm", "linf", "--width", "5", "--height", "5", "--size", "9", "--mode", "absence"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["absent"], true);

    let out = crescent(&["search", "--preset", "l2-hexad"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn search_writes_svgs_and_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let svgs = dir.path().join("svg");
    let cp = dir.path().join("cp.jsonl");
    let out = crescent(&[
        "search",
        "--norm",
        "linf",
        "--width",
        "8",
        "--height",
        "8",
        "--size",
        "8",
        "--mode",
        "all",
        "--svg-dir",
        svgs.to_str().unwrap(),
        "--checkpoint",
        cp.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["configurations"].as_array().unwrap().len(), 5);
    assert_eq!(std::fs::read_dir(&svgs).unwrap().count(), 5);
    assert!(std::fs::read_to_string(&cp).unwrap().contains("\"kind\":\"stats\""));

    std::fs::write(&cp, "garbage\n").unwrap();
    let out = crescent(&[
        "search", "--norm", "linf", "--width", "8", "--height", "8", "--size", "8", "--mode", "all", "--checkpoint",
        cp.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn search_usage_errors_and_limits() {
    let out = crescent(&["search", "--preset", "l2-hexad", "--norm", "linf"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("conflicts"));

    let out = crescent(&["search", "--norm", "linf", "--width", "4"]);
    assert_eq!(code(&out), 2);

    let out = crescent(&[
        "search", "--norm", "linf", "--width", "8", "--height", "8", "--size", "8", "--mode", "all", "--node-cap", "100",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit"));
}

#[test]
fn classify_counterexample_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cx.json");
    let out = crescent(&["construct", "counterexample", "--len", "4", "--a", "1/8", "--b", "1/4", "--out", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = crescent(&["classify", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["type"], "xyxy");
    assert_eq!(v["perpendicular_perturbation"], false);

    let f = dir.path().join("pl.json");
    assert_eq!(code(&crescent(&["construct", "perturbed-line", "--n", "7", "--out", f.to_str().unwrap()])), 0);
    let v = json(&crescent(&["classify", f.to_str().unwrap()]));
    assert_eq!(v["linelike"], true);
    assert_eq!(v["perpendicular_perturbation"], true);

    let square = write(dir.path(), "sq.json", r#"{"norm": "linf", "points": [[0, 0], [1, 0], [0, 1], [1, 1]]}"#);
    assert_eq!(code(&crescent(&["classify", &square])), 1);
}

#[test]
fn lemma_and_theorem_verification() {
    let out = crescent(&["verify-lemmas", "--grid", "8"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["all_hold"], true);

    let out = crescent(&["verify-lemmas", "--grid", "8", "--inverted"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["counterexample"]["type"], "xy");

    assert_eq!(code(&crescent(&["verify-lemmas", "--grid", "6"])), 2);

    let out = crescent(&["verify-theorem", "--n", "5", "--grid", "4"]);
    let v = json(&out);
    assert!(v["non_perturbations"].as_u64().unwrap() > 0);
    assert_eq!(v["consistent"], true);
    assert_eq!(code(&out), 0);
}

#[test]
fn plot_distance_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let t8 = dir.path().join("t8.json");
    crescent(&["construct", "table", "--n", "8", "--out", t8.to_str().unwrap()]);
    let svg = dir.path().join("t8.svg");
    assert_eq!(code(&crescent(&["plot", t8.to_str().unwrap(), "--out", svg.to_str().unwrap()])), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("class=\"edge\"").count(), 28);
    assert_eq!(text.matches("class=\"node\"").count(), 8);
    let classes: std::collections::BTreeSet<&str> =
        text.match_indices("data-class=\"").map(|(i, _)| &text[i + 12..i + 13]).collect();
    assert_eq!(classes.len(), 7);

    let two = write(dir.path(), "two.json", r#"{"norm": "l2", "points": [[0, 0], [3, 4]]}"#);
    let svg2 = dir.path().join("two.svg");
    assert_eq!(code(&crescent(&["plot", &two, "--out", svg2.to_str().unwrap()])), 0);
    assert_eq!(std::fs::read_to_string(&svg2).unwrap().matches("class=\"edge\"").count(), 1);

    let empty = write(dir.path(), "empty.json", "");
    assert_eq!(code(&crescent(&["plot", &empty, "--out", svg2.to_str().unwrap()])), 2);
}

#[test]
fn constructions_round_trip_through_check() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["crescent4", "--norm", "hexagon"],
        vec!["crescent4", "--norm", "l1"],
        vec!["crescent4", "--norm", "l2"],
        vec!["hexad", "--reading", "alternate"],
    ] {
        let f = dir.path().join("c.json");
        let mut full = vec!["construct"];
        full.extend(&args);
        full.extend(["--out", f.to_str().unwrap()]);
        assert_eq!(code(&crescent(&full)), 0, "{args:?}");
        assert_eq!(code(&crescent(&["check", f.to_str().unwrap()])), 0, "{args:?}");
    }
    let f = dir.path().join("lit.json");
    crescent(&["construct", "hexad", "--reading", "literal", "--out", f.to_str().unwrap()]);
    assert_eq!(code(&crescent(&["check", f.to_str().unwrap()])), 1);

    let out = crescent(&["construct", "lp-search", "--p", "3", "--n", "4", "--grid", "16"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["min_discrepancy"].as_f64().unwrap() > 0.0);
}
