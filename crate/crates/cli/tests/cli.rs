use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::{json, Value};

use hopfpi::finite::{group_algebra, FiniteGroupTable};
use hopfpi::hopf::dual_cop_hopf;
use hopfpi::io::{hopf_to_json, matrix_to_json, write_json};
use hopfpi::pi::GroupOracle;
use hopfpi::scalars::ScalarField;
use hopfpi::tensor::Mat;

fn hopfpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfpi")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON object")
}

#[test]
fn dg_s3_builds_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("dg_s3");
    let out = hopfpi(&["build", "dg", "--group", "s3", "--out", path(&bundle)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let components = fs::read_dir(&bundle)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("component-"))
        .count();
    assert_eq!(components, 6);

    let out = hopfpi(&["verify", "--in", path(&bundle), "--suite", "all", "--colors", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = report.as_array().unwrap();
    assert!(entries.iter().all(|e| e["status"] == "pass"));
    assert_eq!(entries.iter().filter(|e| e["axiom"] == "eq20-colored-ybe").count(), 216);
}

#[test]
fn corrupted_antipode_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("dg_z2");
    assert!(hopfpi(&["build", "dg", "--group", "z2", "--out", path(&bundle)]).status.success());
    let file = bundle.join("antipode-0000.json");
    let mut m: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    m["entries"][0][2] = json!("2");
    fs::write(&file, serde_json::to_string_pretty(&m).unwrap()).unwrap();

    let out = hopfpi(&["verify", "--in", path(&bundle), "--suite", "picoalgebra"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&Value> = report.as_array().unwrap().iter().filter(|e| e["status"] == "fail").collect();
    assert!(failed.iter().any(|e| e["axiom"] == "eq3-antipode"));
    assert!(failed.iter().all(|e| e["witness"].is_array()));
}

#[test]
fn an1_components_have_dimension_8() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("an1");
    assert!(hopfpi(&["build", "an", "--n", "1", "--field", "q", "--out", path(&bundle)]).status.success());
    let out = hopfpi(&["inspect", "--in", path(&bundle)]);
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    let dims = summary["dims"].as_object().unwrap();
    assert_eq!(dims.len(), 4);
    assert!(dims.values().all(|d| d == 8));
    assert_eq!(hopfpi(&["verify", "--in", path(&bundle)]).status.code(), Some(0));
    let one_color = hopfpi(&["verify", "--in", path(&bundle), "--suite", "qt,ybe", "--colors", "[[2]];[[-1]]"]);
    assert_eq!(one_color.status.code(), Some(0));
}

#[test]
fn non_associative_table_names_the_triple() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("bad.json");
    fs::write(&table, r#"{"names": ["a", "b", "c"], "table": [[0, 1, 2], [1, 0, 0], [2, 0, 1]]}"#).unwrap();
    let out = hopfpi(&["build", "dg", "--group", &format!("table:{}", path(&table)), "--out", path(&dir.path().join("x"))]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out)["error"].as_str().unwrap().to_string();
    assert!(err.contains("not associative at (b, b, c)"), "{err}");
}

#[test]
fn sl2_classical_and_colored_checks_pass() {
    let out = hopfpi(&["verify", "sl2", "--n", "2,2,2", "--alpha", "0", "--beta", "0", "--gamma", "0", "--prec", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let out = hopfpi(&["verify", "sl2", "--n", "2,3,2", "--alpha", "0", "--beta", "h", "--gamma", "1+2h", "--prec", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let bad = hopfpi(&["verify", "sl2", "--n", "2", "--alpha", "1+", "--prec", "6"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr_json(&bad)["error"].is_string());
}

#[test]
fn export_is_byte_identical_across_builds() {
    let dir = tempfile::tempdir().unwrap();
    let mut exports = Vec::new();
    for run in 0..2 {
        let bundle = dir.path().join(format!("b{run}"));
        let file = dir.path().join(format!("e{run}.json"));
        assert!(hopfpi(&["build", "dg", "--group", "z4", "--out", path(&bundle)]).status.success());
        assert!(hopfpi(&["export", "--in", path(&bundle), "--out", path(&file)]).status.success());
        exports.push(fs::read(&file).unwrap());
    }
    assert_eq!(exports[0], exports[1]);
    // a single-file export verifies like the directory
    let out = hopfpi(&["verify", "--in", path(&dir.path().join("e0.json")), "--suite", "hopf,ribbon"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn double_from_files_builds_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let field = ScalarField::Rationals;
    let g = FiniteGroupTable::cyclic(3);
    let kg = Arc::new(group_algebra(&g, field).unwrap());
    let (dual, pairing) = dual_cop_hopf(&kg).unwrap();
    let p = |name: &str| dir.path().join(name);
    write_json(&p("a.json"), &hopf_to_json(&kg)).unwrap();
    write_json(&p("b.json"), &hopf_to_json(&dual)).unwrap();
    write_json(&p("sigma.json"), &json!({ "sigma": matrix_to_json(&pairing.sigma) })).unwrap();
    write_json(&p("act.json"), &json!({ "group": g.descriptor(), "generator-rule": "conjugation" })).unwrap();

    let build = |act: &str, out: &str| {
        hopfpi(&[
            "build", "double",
            "--A", path(&p("a.json")),
            "--B", path(&p("b.json")),
            "--sigma", path(&p("sigma.json")),
            "--action", path(&p(act)),
            "--out", path(&p(out)),
        ])
    };
    let out = build("act.json", "d");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = hopfpi(&["verify", "--in", path(&p("d"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // 2·id does not fix the unit, so it is not a Hopf automorphism
    let twice = Mat::identity(field, 3).scale(&field.from_i64(2));
    write_json(&p("bad.json"), &json!({ "group": g.descriptor(), "matrices": { "g": matrix_to_json(&twice) } })).unwrap();
    let out = build("bad.json", "d2");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["error"].as_str().unwrap().contains("not a Hopf automorphism"));
}

#[test]
fn missing_input_is_a_json_error() {
    let out = hopfpi(&["verify", "--in", "/nonexistent/bundle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["error"].as_str().unwrap().contains("/nonexistent/bundle"));
}
