use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn coxsaito(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxsaito"))
        .args(args)
        .env_remove("COXSAITO_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.extend(["data", name]);
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("report is JSON")
}

/// Check name -> status.
fn statuses(report: &Value) -> BTreeMap<String, String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn b2_full_run_passes_with_json_schema() {
    let out =
        coxsaito(&["verify", "--type", "B", "--rank", "2", "--kmax", "3", "--mmax", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["checks", "field", "group", "summary"]);
    assert_eq!(report["group"], "B2");
    assert_eq!(report["field"], "Q");
    assert_eq!(report["summary"]["failed"], 0);
    for c in report["checks"].as_array().unwrap() {
        assert!(c["name"].is_string() && c["paper_ref"].is_string() && c["ms"].is_number());
        assert!(["pass", "skipped"].contains(&c["status"].as_str().unwrap()), "{c}");
        assert!(c.get("witness").is_none());
    }
    let names = statuses(&report);
    assert_eq!(names["xi/degree/m=7"], "pass");
    assert_eq!(names["hodge/poincare/p=3"], "pass");
}

#[test]
fn rank_one_smoke_run() {
    let out = coxsaito(&["verify", "--type", "A", "--rank", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("group A1  field Q  invariants builtin"));
    assert!(text.contains("PASS  bk/difference/k=3"));
    assert!(text.contains("summary: 88 passed, 0 failed, 5 skipped"));

    let out = coxsaito(&["basis", "--type", "A", "--rank", "1", "-m", "3"]);
    assert!(stdout(&out).contains("-4*x1^3*d/dx1"), "{}", stdout(&out));
}

#[test]
fn basis_prints_degrees() {
    let out = coxsaito(&["basis", "--type", "B", "--rank", "2", "-m", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("xi^(3)_1  degree 5"), "{text}");
    assert!(text.contains("xi^(3)_2  degree 7"), "{text}");

    let out = coxsaito(&["basis", "--type", "B", "--rank", "2", "-m", "3", "--format", "json"]);
    let v = json(&out);
    let degrees: Vec<i64> =
        v["basis"].as_array().unwrap().iter().map(|b| b["degree"].as_i64().unwrap()).collect();
    assert_eq!(degrees, [5, 7]);
}

#[test]
fn dihedral_basis_uses_order_flag() {
    let out = coxsaito(&["basis", "--type", "I2", "--m", "5", "-m", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("group I2(5)  field Q[t]/("), "{text}");
    assert!(text.contains("xi^(1)_2  degree 4"), "{text}");
}

#[test]
fn text_and_json_list_the_same_checks() {
    let args = ["verify", "--type", "I2", "--m", "4", "--kmax", "2", "--mmax", "4", "--pmax", "2"];
    let text = stdout(&coxsaito(&args));
    let mut with_json = args.to_vec();
    with_json.extend(["--format", "json"]);
    let report = json(&coxsaito(&with_json));
    let from_text: BTreeMap<String, String> = text
        .lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            let status = match it.next()? {
                "PASS" => "pass",
                "FAIL" => "fail",
                "SKIP" => "skipped",
                _ => return None,
            };
            Some((it.next()?.to_string(), status.to_string()))
        })
        .collect();
    assert_eq!(from_text, statuses(&report));
}

#[test]
fn b2_file_matches_builtin() {
    let from_file = json(&coxsaito(&["verify", "--invariants", &data("b2.toml"), "--format", "json"]));
    let builtin = json(&coxsaito(&["verify", "--type", "B", "--rank", "2", "--format", "json"]));
    assert_eq!(statuses(&from_file), statuses(&builtin));
    assert_eq!(from_file["summary"], builtin["summary"]);
    assert_eq!(from_file["group"], "B2");
}

#[test]
fn h3_file_is_validated_and_runnable() {
    let out =
        coxsaito(&["verify", "--invariants", &data("h3.toml"), "--suite", "context", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["group"], "H3");
    assert_eq!(report["field"], "Q[t]/(t^2 - 5), t = s5");
    assert_eq!(report["summary"]["passed"], 4);

    let out = coxsaito(&["basis", "--invariants", &data("h3.toml"), "-m", "1"]);
    let text = stdout(&out);
    for (j, d) in [(1, 1), (2, 5), (3, 9)] {
        assert!(text.contains(&format!("xi^(1)_{j}  degree {d}")), "{text}");
    }
}

#[test]
fn dependent_invariants_exit_with_config_error() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("dependent.toml");
    let b2 = fs::read_to_string(data("b2.toml")).unwrap();
    let second = b2.rfind("[[invariant]]").unwrap();
    let dependent = format!(
        "{}[[invariant]]\nterms = [\n  {{ exponents = [4, 0], coefficient = 1 }},\n  {{ exponents = [2, 2], coefficient = 2 }},\n  {{ exponents = [0, 4], coefficient = 1 }},\n]\n",
        &b2[..second]
    );
    fs::write(&path, dependent).unwrap();
    let out = coxsaito(&["verify", "--invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Jacobian criterion failed"), "{}", stderr(&out));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.toml");
    let bad = fs::read_to_string(data("b2.toml")).unwrap().replace("\"-1\"]]", "\"-1/0x\"]]");
    fs::write(&path, &bad).unwrap();
    let out = coxsaito(&["verify", "--invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let line = bad.lines().position(|l| l.starts_with("hyperplanes")).unwrap() + 1;
    let col = bad.lines().nth(line - 1).unwrap().find("\"-1/0x\"").unwrap() + 1;
    assert!(stderr(&out).contains(&format!("bad.toml:{line}:{col}:")), "{}", stderr(&out));

    fs::write(&path, "[group]\nlabel = \"B2\"\nrank = \n").unwrap();
    let out = coxsaito(&["verify", "--invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.toml:3:"), "{}", stderr(&out));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["verify", "--type", "B", "--rank", "2", "--suite", "lemmas"],
        vec!["verify", "--type", "B", "--rank", "2", "--kmax", "0"],
        vec!["verify", "--type", "E", "--rank", "6"],
        vec!["verify", "--type", "B"],
        vec!["verify", "--type", "I2", "--m", "2"],
        vec!["verify", "--type", "B", "--rank", "2", "--perturb", "metric:3:1:1"],
        vec!["verify", "--invariants", "/nonexistent/file.toml"],
    ] {
        let out = coxsaito(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn perturbed_metric_fails_with_located_witness() {
    let out =
        coxsaito(&["verify", "--type", "B", "--rank", "2", "--perturb", "metric:1:2:1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let recompute =
        report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "metric/recompute").unwrap();
    assert_eq!(recompute["status"], "fail");
    assert_eq!(recompute["witness"]["entry"], serde_json::json!([1, 2]));
    assert!(recompute.get("internal").is_none());
}

#[test]
fn singular_bk_is_an_internal_error() {
    let out = coxsaito(&["verify", "--type", "A", "--rank", "1", "--perturb", "bk:1:1:1:-2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("internal: matrix is singular"));
}

#[test]
fn report_can_be_written_to_a_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = coxsaito(&[
        "verify",
        "--type",
        "A",
        "--rank",
        "2",
        "--suite",
        "bk",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(statuses(&report).keys().all(|n| n.starts_with("bk/")));
}

#[test]
fn cache_dir_persists_tables() {
    let dir = TempDir::new().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_coxsaito"))
            .args(["verify", "--type", "B", "--rank", "2", "--format", "json"])
            .env("COXSAITO_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let stored: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert!(stored["dkx"].as_array().unwrap().len() >= 4);
    let second = run();
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(statuses(&json(&first)), statuses(&json(&second)));
}
