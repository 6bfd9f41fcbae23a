mod common;

use std::path::PathBuf;
use std::process::Command;

use common::fixture_path;
use gridspectra::cli::{halves, InvariantReport, VerifyOutput};
use gridspectra::grid::GridDiagram;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gridspectra"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn tmp_grid(name: &str, g: &GridDiagram) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, g.to_text()).unwrap();
    p.display().to_string()
}

fn schema(kind: &str) -> Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema").join(format!("{kind}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn unknot_homology_totals() {
    for (m, want) in [(2, 2), (3, 4), (4, 8), (5, 16)] {
        let v = json(&["homology", &fx(&format!("unknot{m}.grid"))]);
        assert_eq!(v["total"], want);
        assert_eq!(v["alexander"], "alex2");
    }
}

#[test]
fn translated_trefoil_has_the_same_table() {
    let g = GridDiagram::parse(&std::fs::read_to_string(fixture_path("trefoil_right5.grid")).unwrap()).unwrap();
    let moved = tmp_grid("trefoil_translated.grid", &g.translate(2, 1));
    assert_ne!(g.translate(2, 1), g);
    let (a, b) = (json(&["homology", &fx("trefoil_right5.grid")]), json(&["homology", &moved]));
    assert_eq!(a["entries"], b["entries"]);
    assert_eq!(a["total"], 48);
}

#[test]
fn two_component_link_table_matches_json() {
    let v = json(&["verify", &fx("trefoil_right5.grid"), &fx("trefoil_pinch.moves")]);
    let out: VerifyOutput = serde_json::from_value(v).unwrap();
    let link = GridDiagram::new(out.result.xs.clone(), out.result.os.clone()).unwrap();
    assert_eq!(link.num_components(), 2);
    let path = tmp_grid("pinched.grid", &link);
    let h = json(&["homology", &path]);
    let entries = h["entries"].as_array().unwrap();
    assert_eq!(h["total"].as_u64().unwrap() % (1 << (link.m() - 2)), 0);
    let (code, table, _) = run(&["homology", &path]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = table.lines().skip(2).collect();
    assert_eq!(rows.len(), entries.len());
    for (row, e) in rows.iter().zip(entries) {
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols[0], e["maslov"].to_string());
        assert_eq!(cols[1], halves(e["alex2"].as_i64().unwrap() as i32));
        assert_eq!(cols[2], e["dim"].to_string());
    }
}

fn strip_timing(text: &str) -> &str {
    &text[..text.find("\"timing\"").unwrap()]
}

#[test]
fn json_is_deterministic_outside_timing() {
    for args in [
        vec!["--json", "invariants", "GRID"],
        vec!["--json", "homology", "GRID"],
        vec!["--json", "obstruct", "GRID", "GRID"],
    ] {
        let grid = fx("trefoil_right6.grid");
        let args: Vec<&str> = args.iter().map(|a| if *a == "GRID" { grid.as_str() } else { a }).collect();
        let (_, a, _) = run(&args);
        let (_, b, _) = run(&args);
        assert_eq!(strip_timing(&a), strip_timing(&b));
        assert!(a.trim_end().ends_with('}'));
    }
}

#[test]
fn outputs_validate_against_shipped_schemas() {
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("invariants", vec![fx("trefoil_right5.grid")]),
        ("homology", vec![fx("unknot4.grid")]),
        ("obstruct", vec![fx("unknot3.grid"), fx("trefoil_right5.grid")]),
        ("verify", vec![fx("trefoil_right5.grid"), fx("trefoil_pinch.moves")]),
    ];
    for (kind, files) in cases {
        let mut args = vec![kind];
        args.extend(files.iter().map(String::as_str));
        let v = json(&args);
        let validator = jsonschema::validator_for(&schema(kind)).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{kind}: {errors:?}");
        let mut broken = v.clone();
        broken["alexander"] = Value::from("alex");
        assert!(!validator.is_valid(&broken));
    }
}

#[test]
fn invariants_json_round_trips_byte_for_byte() {
    let (code, out, _) = run(&["--json", "invariants", &fx("trefoil_left5.grid")]);
    assert_eq!(code, 0);
    let report: InvariantReport = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", out);
}

/// `key=value` pairs of a table, in order.
fn pairs(table: &str) -> Vec<(String, String)> {
    table.split_whitespace().filter_map(|t| t.split_once('=')).map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

#[test]
fn table_and_json_agree() {
    for name in ["unknot4.grid", "trefoil_right5.grid", "trefoil_left5.grid"] {
        let v = json(&["invariants", &fx(name)]);
        let (_, table, _) = run(&["invariants", &fx(name)]);
        let mut want: Vec<(String, String)> = vec![
            ("m".into(), v["grid"]["m"].to_string()),
            ("components".into(), v["components"].to_string()),
            ("tb".into(), v["tb"].to_string()),
            ("rot".into(), v["rot"].to_string()),
            ("generators".into(), v["complex"]["generators"].to_string()),
            ("reduced".into(), if v["complex"]["reduced"] == true { "yes" } else { "no" }.into()),
            ("filtration_width".into(), v["complex"]["filtration_width"].to_string()),
        ];
        let yes = |b: &Value| if b == true { "yes".to_string() } else { "no".to_string() };
        for s in v["signs"].as_array().unwrap() {
            want.push(("M".into(), s["base_bigrading"]["maslov"].to_string()));
            want.push(("alex2".into(), s["base_bigrading"]["alex2"].to_string()));
            want.push(("n".into(), s["n"].to_string().trim_matches('"').to_string()));
            for p in s["pages"].as_array().unwrap() {
                want.push(("r".into(), p["r"].to_string()));
                want.push(("lambda_vanishes".into(), yes(&p["lambda_vanishes"])));
                want.push(("d_r_vanishes".into(), yes(&p["d_r_vanishes"])));
            }
        }
        assert_eq!(pairs(&table), want, "{name}");
    }
}

#[test]
fn sign_flag_restricts_output() {
    let v = json(&["--sign", "-", "invariants", &fx("unknot3.grid")]);
    let signs = v["signs"].as_array().unwrap();
    assert_eq!(signs.len(), 1);
    assert_eq!(signs[0]["sign"], "-");
    let v = json(&["invariants", "--sign", "+", &fx("unknot3.grid")]);
    assert_eq!(v["signs"][0]["sign"], "+");
    assert_eq!(v["signs"].as_array().unwrap().len(), 1);
}

#[test]
fn unknot_invariants_are_infinite() {
    let v = json(&["invariants", &fx("unknot2.grid")]);
    for s in v["signs"].as_array().unwrap() {
        assert_eq!(s["n"], "inf");
        assert!(s["pages"].as_array().unwrap().iter().all(|p| p["lambda_vanishes"] == false));
    }
}

#[test]
fn verify_reports_each_move() {
    let (code, out, _) = run(&["verify", &fx("unknot2.grid"), &fx("unknot_stab.moves")]);
    assert_eq!(code, 0);
    assert!(out.contains("[0] stab X:SE 0"));
    assert!(out.contains("composite shift=(0,0)  PASS"));
    let (code, out, _) = run(&["verify", &fx("trefoil_right5.grid"), &fx("trefoil_pinch.moves")]);
    assert_eq!(code, 0);
    assert!(out.contains("(inserted)"));
    assert!(out.contains("pinchX"));
    assert!(out.contains("composite shift=(1,0)  PASS"));
    assert_eq!(out.lines().last(), Some("PASS"));
}

#[test]
fn exit_codes() {
    let bad = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("bad.grid");
    std::fs::write(&bad, "m: 3\nX: 0 1 2\nO: 0 2 1\n").unwrap();
    let bad = bad.display().to_string();
    assert_eq!(run(&["invariants", &bad]).0, 2);
    assert_eq!(run(&["homology", "/nonexistent/grid"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--max-states", "10", "homology", &fx("unknot5.grid")]).0, 3);
    assert_eq!(run(&["--max-states", "10", "invariants", &fx("unknot5.grid")]).0, 3);
    let (code, _, err) = run(&["verify", &fx("trefoil_right5.grid"), &fx("bad_destab.moves")]);
    assert_eq!(code, 4);
    assert!(err.contains("step 0"), "{err}");
    assert_eq!(run(&["obstruct", &fx("unknot3.grid"), &fx("unknot3.grid")]).0, 0);
}

#[test]
fn identical_grids_are_not_obstructed() {
    let (code, out, _) = run(&["obstruct", &fx("trefoil_right5.grid"), &fx("trefoil_right5.grid")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("NO_OBSTRUCTION"));
}

#[test]
fn thread_count_comes_from_the_environment() {
    let g = fx("unknot4.grid");
    let (code, one, _) = run_env(&["--json", "homology", &g], &[("GRIDSPECTRA_THREADS", "1")]);
    assert_eq!(code, 0);
    let (_, two, _) = run_env(&["--json", "homology", &g], &[("GRIDSPECTRA_THREADS", "2")]);
    assert_eq!(strip_timing(&one), strip_timing(&two));
    assert_eq!(run_env(&["homology", &g], &[("GRIDSPECTRA_THREADS", "many")]).0, 2);
}
