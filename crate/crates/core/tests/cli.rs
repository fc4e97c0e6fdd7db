use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use squarepeg::cli::RunReport;

fn squarepeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squarepeg")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = squarepeg(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn num(v: &Value, path: &str) -> f64 {
    v.pointer(path).and_then(Value::as_f64).unwrap_or_else(|| panic!("missing {path}"))
}

#[test]
fn analyze_examples() {
    let r = report(&["analyze", "--shape", "ngon:5"]);
    assert_eq!(r.pointer("/run/command"), Some(&Value::from("analyze")));
    assert_eq!(r.pointer("/run/result/obtuse"), Some(&Value::Bool(true)));
    assert!(num(&r, "/run/result/s_star") > 0.0);

    let r = report(&["analyze", "--shape", "ngon:4"]);
    assert_eq!(r.pointer("/run/result/obtuse"), Some(&Value::Bool(false)));
    assert_eq!(num(&r, "/run/result/s_star"), 0.0);

    let r = report(&["analyze", "--shape", "ellipse:2,1", "--samples", "512"]);
    assert_eq!(r.pointer("/run/result/obtuse"), Some(&Value::Bool(true)));
}

#[test]
fn inscribe_examples() {
    let r = report(&["inscribe", "--shape", "disk"]);
    let side = num(&r, "/run/result/table/square/side");
    assert!((side - 2f64.sqrt()).abs() < 2e-3, "{side}");
    let oracle = r.pointer("/run/result/oracle").and_then(Value::as_array).unwrap();
    assert!(!oracle.is_empty());
    for o in oracle {
        assert!((num(o, "/square/side") - 2f64.sqrt()).abs() < 2e-3);
    }

    let r = report(&["inscribe", "--shape", "ellipse:2,1", "--samples", "512"]);
    let side = num(&r, "/run/result/table/square/side");
    assert!((side - 1.7889).abs() < 1e-3, "{side}");
    assert!(num(&r, "/run/result/relative_agreement") <= 1e-3);

    let out = squarepeg(&["inscribe", "--shape", "ngon:4", "--method", "table"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--method oracle"), "{err}");
}

#[test]
fn table_examples() {
    let r = report(&["table", "--shape", "disk", "--side", "1"]);
    assert!((num(&r, "/run/result/level/y") - 0.29289).abs() < 1e-5);
    assert_eq!(r.pointer("/run/result/level/trivial"), Some(&Value::Bool(false)));

    let r = report(&["table", "--shape", "disk", "--side", "10"]);
    assert_eq!(r.pointer("/run/result/level/trivial"), Some(&Value::Bool(true)));
    assert_eq!(num(&r, "/run/result/level/y"), 0.0);
}

#[test]
fn constant_grid_field_is_level_at_first_start() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    let heights = vec![1.0; 9];
    let spec = serde_json::json!({ "bbox": [-1.0, -1.0, 1.0, 1.0], "nx": 3, "ny": 3, "heights": heights });
    std::fs::write(&grid, spec.to_string()).unwrap();
    let r = report(&["table", "--field", grid.to_str().unwrap(), "--side", "0.5"]);
    assert_eq!(num(&r, "/run/result/level/residual"), 0.0);
    assert_eq!(num(&r, "/run/result/level/start_index"), 0.0);
    assert_eq!(num(&r, "/run/result/level/y"), 1.0);
    assert_eq!(r.pointer("/run/result/field"), Some(&Value::from("grid")));
    assert_eq!(num(&r, "/input/field/nx"), 3.0);
}

#[test]
fn witness_examples() {
    let r = report(&["witness", "--shape", "ngon:4", "--auto", "--side", "1"]);
    assert_eq!(r.pointer("/run/result/verified"), Some(&Value::Bool(true)));
    assert!(r.pointer("/run/result/vertex").and_then(Value::as_u64).is_some());

    let r = report(&["witness", "--shape", "ngon:3", "--auto", "--side", "5"]);
    assert_eq!(r.pointer("/run/result/verified"), Some(&Value::Bool(true)));
    assert!((num(&r, "/run/result/square/side") - 5.0).abs() < 1e-12);

    let out = squarepeg(&["witness", "--shape", "ngon:5", "--auto"]);
    assert_eq!(out.status.code(), Some(3));

    // the top corner of the unit-circumradius square
    let r = report(&["witness", "--shape", "ngon:4", "--point", "0,1", "--side", "0.3"]);
    assert_eq!(r.pointer("/run/result/verified"), Some(&Value::Bool(true)));
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["analyze", "--shape", "hexagon"],
        vec!["analyze", "--shape", "ngon:2"],
        vec!["analyze"],
        vec!["table", "--shape", "disk", "--side", "-1"],
        vec!["frobnicate"],
    ] {
        let out = squarepeg(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = squarepeg(&["analyze", "--shape-json", "/nonexistent/shape.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shape_json_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"type": "regular_ngon", "n": 2}"#).unwrap();
    let out = squarepeg(&["analyze", "--shape-json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains('n'));

    std::fs::write(&path, "{\n  \"type\": \"polygon\",\n  \"vertices\": [[0, 0], [1, 0],\n}").unwrap();
    let out = squarepeg(&["analyze", "--shape-json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn shape_json_matches_inline_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pentagon.json");
    std::fs::write(&path, r#"{"type": "regular_ngon", "n": 5}"#).unwrap();
    let a = without_timing(report(&["analyze", "--shape-json", path.to_str().unwrap()]));
    let b = without_timing(report(&["analyze", "--shape", "ngon:5"]));
    assert_eq!(a.pointer("/run"), b.pointer("/run"));
    assert_eq!(a.pointer("/input/body"), b.pointer("/input/body"));
}

#[test]
fn reports_round_trip_through_serde() {
    for args in [
        vec!["analyze", "--shape", "ngon:6"],
        vec!["inscribe", "--shape", "ngon:5", "--method", "table"],
        vec!["table", "--shape", "ngon:7", "--side", "0.4"],
        vec!["witness", "--shape", "ngon:3", "--auto"],
    ] {
        let out = squarepeg(&args);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let parsed: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json().trim(), text.trim());
    }
}

#[test]
fn out_svg_and_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let (json, svg, csv) = (p("r.json"), p("f.svg"), p("f.csv"));
    let out = squarepeg(&[
        "analyze", "--shape", "ngon:5", "--out", &json, "--svg", &svg, "--csv", &csv, "--boundary-samples", "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let parsed: RunReport = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(parsed.input.body.len(), 5);

    check_svg(Path::new(&svg), 1);

    let mut rows = csv::Reader::from_path(&csv).unwrap();
    let headers = rows.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["index", "kind", "x", "y", "f_delta"]);
    let records: Vec<_> = rows.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 45);
    assert_eq!(records.iter().filter(|r| &r[1] == "vertex").count(), 5);
    for r in &records {
        assert!(r[4].parse::<f64>().unwrap() > 0.0);
    }

    let svg2 = p("i.svg");
    let out = squarepeg(&["inscribe", "--shape", "ngon:7", "--svg", &svg2, "--out", &json]);
    assert_eq!(out.status.code(), Some(0));
    // level square, apex, scaled square, at least one oracle square
    check_svg(Path::new(&svg2), 4);
}

fn check_svg(path: &Path, min_layers: usize) {
    let text = std::fs::read_to_string(path).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    let ids: Vec<_> = root.descendants().filter_map(|n| n.attribute("id")).collect();
    assert!(ids.contains(&"body") && ids.contains(&"legend"), "{ids:?}");
    assert!(ids.iter().filter(|i| i.starts_with("layer")).count() >= min_layers, "{ids:?}");
}

#[test]
fn every_command_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    let spec = serde_json::json!({
        "bbox": [-1.0, -1.0, 1.0, 1.0], "nx": 3, "ny": 3,
        "heights": [0.0, 0.5, 0.0, 0.5, 2.0, 0.5, 0.0, 0.5, 0.0],
    });
    std::fs::write(&grid, spec.to_string()).unwrap();
    for args in [
        vec!["analyze", "--shape", "ngon:7"],
        vec!["inscribe", "--shape", "ngon:5"],
        vec!["table", "--shape", "ellipse:2,1", "--side", "0.8"],
        vec!["table", "--field", grid.to_str().unwrap(), "--side", "0.6"],
        vec!["witness", "--shape", "ngon:4", "--auto", "--side", "2"],
    ] {
        let a = without_timing(report(&args));
        let b = without_timing(report(&args));
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap(),
            "{args:?}"
        );
    }
}
