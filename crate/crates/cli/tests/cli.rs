use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn projflat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projflat")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = projflat(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn schema() -> JSONSchema {
    let text = include_str!("../schema/verdict.schema.json");
    JSONSchema::compile(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(schema: &JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{v} fails the schema: {msgs:?}");
    }
}

#[test]
fn analyze_examples() {
    let schema = schema();
    let v = json(&["analyze", "--field", "r", "--n", "6", "--subset", "1,3,5", "--structure", "parabolic", "--json"]);
    assert_eq!(v["verdict"], "not_flat");
    assert_eq!(v["diagram"], "*-o-*-o-*");
    assert_valid(&schema, &v);

    let v = json(&["analyze", "--field", "r", "--n", "4", "--subset", "3", "--structure", "solvable", "--json"]);
    assert_eq!(v["verdict"], "flat");
    let witness: Vec<&str> = v["witness"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(witness, ["-1/4", "-1/2", "0", "0", "0", "0", "0"]);
    assert_eq!(v["checks"]["oracle"], "exact");
    assert_valid(&schema, &v);

    let v = json(&["analyze", "--field", "h", "--n", "2", "--subset", "empty", "--structure", "parabolic", "--json"]);
    assert_eq!(v["verdict"], "not_flat");
    let last = v["certificate"].as_array().unwrap().last().unwrap().as_str().unwrap();
    assert!(last.ends_with("beta_22^2 = -1"), "{last}");
    assert_valid(&schema, &v);
}

#[test]
fn tensor_dump_validates() {
    let v = json(&["analyze", "--field", "r", "--n", "3", "--subset", "1", "--json", "--dump-tensors"]);
    let t = &v["tensors"];
    assert_eq!(t["torsion_free"], true);
    assert_eq!(t["basis"], v["basis"]);
    assert!(!t["nabla"].as_array().unwrap().is_empty());
    assert_valid(&schema(), &v);

    let text = String::from_utf8(projflat(&["analyze", "--field", "r", "--n", "2", "--dump-tensors"]).stdout).unwrap();
    assert!(text.contains("nabla(E12, H1) = -1/2 E12"), "{text}");
}

#[test]
fn enumerate_examples() {
    let schema = schema();
    let v = json(&["enumerate", "--field", "r", "--n", "6", "--structure", "parabolic", "--json"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 31);
    assert_eq!(v["summary"]["not_flat"], 4);
    assert_eq!(v["summary"]["unknown"], 0);
    rows.iter().for_each(|r| assert_valid(&schema, r));

    let v = json(&["enumerate", "--field", "r", "--n", "6", "--structure", "solvable", "--json"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 31);
    assert_eq!(v["summary"]["not_flat"], 0);

    let v = json(&["enumerate", "--field", "r", "--n", "2", "--json"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["subset"], "empty");
    assert_eq!(v["rows"][0]["verdict"], "flat");
}

#[test]
fn output_is_independent_of_thread_count() {
    let run = |t: &str| projflat(&["enumerate", "--field", "r", "--n", "5", "--json", "--threads", t]).stdout;
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("1"));
    let text = |t: &str| projflat(&["verify-suite", "sl-h-small", "--threads", t]).stdout;
    assert_eq!(text("1"), text("3"));
}

#[test]
fn invariant_examples() {
    let v = json(&["invariant", "--field", "r", "--n", "2", "--json"]);
    assert_eq!(v["degree"], 3);
    let dividing: Vec<&Value> = v["factors"].as_array().unwrap().iter().filter(|f| f["divides"] == true).collect();
    assert_eq!(dividing.len(), 2);
    for f in dividing {
        assert!(f["factor"].as_str().unwrap().contains("x[e]"));
    }

    let v = json(&["invariant", "--field", "r", "--n", "4", "--subset", "3", "--structure", "solvable", "--json"]);
    assert_eq!(v["linear_factor"], "x[H1] + 2*x[H2] - 4*x[e]");

    let out = projflat(&["invariant", "--field", "r", "--n", "6", "--subset", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("above the cap 12"));
}

#[test]
fn exit_codes() {
    assert_eq!(projflat(&["verify-suite", "nonexistent"]).status.code(), Some(2));
    assert_eq!(projflat(&["analyze", "--field", "c", "--n", "3"]).status.code(), Some(2));
    assert_eq!(projflat(&["analyze", "--field", "r", "--n", "4", "--subset", "1,2,3"]).status.code(), Some(2));
    assert_eq!(projflat(&["analyze", "--field", "r"]).status.code(), Some(2));
    assert_eq!(projflat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(projflat(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_suites_pass() {
    for suite in ["tensors", "sl-h-small", "sl-r-small"] {
        let v = json(&["verify-suite", suite, "--json"]);
        assert_eq!(v["passed"], true, "{v}");
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
    let out = projflat(&["verify-suite", "theorem1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n=6: 31/31 matched") && text.contains("n=7: 63/63 matched"), "{text}");
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("projflat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("verdict.json");
    let out = projflat(&["analyze", "--field", "r", "--n", "3", "--json", "--output", path.to_str().unwrap()]);
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    std::fs::remove_dir_all(dir).unwrap();
}
