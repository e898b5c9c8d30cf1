use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use coxsaito::exactalg::Field;
use coxsaito::saito::{DerivationDegree, XiBasis};
use coxsaito::verify::{CheckReport, CheckResult, CheckStatus};

pub fn field_name(field: &Field) -> String {
    if field.is_rational() {
        "Q".to_string()
    } else {
        format!("Q[t]/({}), t = {}", field.render_minimal_polynomial(), field.generator_description())
    }
}

fn millis(r: &CheckResult) -> f64 {
    (r.elapsed.as_secs_f64() * 1e6).round() / 1e3
}

fn check_json(r: &CheckResult) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), json!(r.name));
    obj.insert("paper_ref".into(), json!(r.paper_ref));
    obj.insert("status".into(), json!(r.status.as_str()));
    if let CheckStatus::Skipped(why) = &r.status {
        obj.insert("reason".into(), json!(why));
    }
    if let Some(w) = &r.witness {
        let mut wit = Map::new();
        if let Some((i, j)) = w.entry {
            wit.insert("entry".into(), json!([i + 1, j + 1]));
        }
        wit.insert("detail".into(), json!(w.detail));
        obj.insert("witness".into(), Value::Object(wit));
    }
    if r.internal {
        obj.insert("internal".into(), json!(true));
    }
    obj.insert("ms".into(), json!(millis(r)));
    Value::Object(obj)
}

pub fn report_json(report: &CheckReport, field: &Field) -> String {
    let s = report.summary();
    let v = json!({
        "group": report.group,
        "field": field_name(field),
        "checks": report.results.iter().map(check_json).collect::<Vec<_>>(),
        "summary": { "passed": s.passed, "failed": s.failed, "skipped": s.skipped },
    });
    serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
}

pub fn report_text(report: &CheckReport, field: &Field) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "group {}  field {}  invariants {}",
        report.group,
        field_name(field),
        report.invariants
    );
    let width = report.results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in &report.results {
        let tag = match &r.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped(_) => "SKIP",
        };
        let _ = writeln!(out, "{tag}  {:<width$}  {:>9.3} ms  {}", r.name, millis(r), r.paper_ref);
        if let CheckStatus::Skipped(why) = &r.status {
            let _ = writeln!(out, "      skipped: {why}");
        }
        if let Some(w) = &r.witness {
            let kind = if r.internal { "internal" } else { "witness" };
            let _ = writeln!(out, "      {kind}: {w}");
        }
    }
    let s = report.summary();
    let _ = writeln!(out, "summary: {} passed, {} failed, {} skipped", s.passed, s.failed, s.skipped);
    out
}

fn degree_json(d: DerivationDegree) -> Value {
    match d {
        DerivationDegree::Zero => Value::Null,
        DerivationDegree::Degree(n) => json!(n),
        DerivationDegree::Inhomogeneous => json!("inhomogeneous"),
    }
}

fn degree_text(d: DerivationDegree) -> String {
    match d {
        DerivationDegree::Zero => "-".into(),
        DerivationDegree::Degree(n) => n.to_string(),
        DerivationDegree::Inhomogeneous => "inhomogeneous".into(),
    }
}

pub fn basis_json(group: &str, field: &Field, basis: &XiBasis) -> String {
    let items: Vec<Value> = basis
        .derivations()
        .iter()
        .enumerate()
        .map(|(j, d)| {
            json!({
                "index": j + 1,
                "degree": degree_json(d.degree()),
                "coefficients": d.coeffs().iter().map(|c| c.render()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let v = json!({ "group": group, "field": field_name(field), "m": basis.m(), "basis": items });
    serde_json::to_string_pretty(&v).expect("basis serializes") + "\n"
}

pub fn basis_text(group: &str, field: &Field, basis: &XiBasis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group {group}  field {}  m = {}", field_name(field), basis.m());
    for (j, d) in basis.derivations().iter().enumerate() {
        let _ = writeln!(out, "xi^({})_{}  degree {}", basis.m(), j + 1, degree_text(d.degree()));
        let _ = writeln!(out, "  {}", d.render());
    }
    out
}
