use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equiloc")).args(args).output().expect("binary runs")
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let schema = schema(name);
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name} report does not match its schema:\n{}", msgs.join("\n"));
}

/// Runs a command that must succeed, checks its schema and that a second
/// run prints the same bytes.
fn report(name: &str, args: &[&str]) -> Value {
    let first = run(args);
    assert!(first.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&first.stderr));
    let second = run(args);
    assert_eq!(first.stdout, second.stdout, "{args:?} is not deterministic");
    let doc: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_valid(name, &doc);
    doc
}

fn failure(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    assert!(!out.status.success());
    let doc: Value = serde_json::from_slice(&out.stderr).expect("error is json");
    assert_valid("error", &doc);
    (out.status.code().unwrap(), doc)
}

#[test]
fn analyze_whitney_umbrella() {
    let doc = report("analyze", &["analyze", "Z^2 - X^2*Y"]);
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["newton_set"], serde_json::json!([[2, 1, 0]]));
    assert_eq!(doc["cone_plane"], true);
}

#[test]
fn analyze_records_tschirnhausen() {
    let doc = report("analyze", &["analyze", "Z^2 + 2*X*Z + X^2 - Y^3"]);
    assert_eq!(doc["surface"]["equation"], "Z^2 - Y^3");
    let history = doc["surface"]["history"].as_array().unwrap();
    assert!(history.iter().any(|h| h.as_str().unwrap().starts_with("Z -> Z - ")));
}

#[test]
fn blowup_charts() {
    let doc = report("blowup", &["blowup", "Z^2 - X^3*Y^3", "--kind", "monoidal", "--direction", "1,0,0"]);
    assert_eq!(doc["surface"]["equation"], "Z1^2 - X1*Y1^3");
    let doc = report("blowup", &["blowup", "Z^2 - (Y^2 - X^3)^2", "--kind", "quadratic", "--direction", "1,0,0"]);
    assert_eq!(doc["surface"]["equation"], "Z1^2 - X1^4 + 2*X1^3*Y1^2 - X1^2*Y1^4");
    let doc = report(
        "blowup",
        &["blowup", "Z^2 - X^2*(1 + Y)", "--kind", "quadratic", "--direction", "0,1,0", "--privileged", "y"],
    );
    assert_eq!(doc["chart"]["privileged"], "Y");
    let doc = report(
        "blowup",
        &["blowup", "Z^2 - (X - Y^2)^3*Y^3", "--kind", "monoidal", "--direction", "1,0,0", "--center", "X - Y^2"],
    );
    assert_eq!(doc["chart"]["center"], "(Z, X - Y^2)");
    assert_eq!(doc["surface"]["equation"], "Z1^2 - X1*Y1^3");
}

#[test]
fn curves_report() {
    let doc = report("curves", &["curves", "Z^2 - X^3*Y^3"]);
    assert_eq!(doc["curves"], serde_json::json!(["(Z, X)", "(Z, Y)"]));
    assert_eq!(doc["completeness"]["kind"], "verified-within-degree");
    let doc = report("curves", &["curves", "Z^3"]);
    assert_eq!(doc["completeness"]["kind"], "unbounded");
}

#[test]
fn invert_report() {
    let doc = report("invert", &["invert", "--g", "-Y^2"]);
    assert_eq!(doc["h"], "-Y^2 + X^3");
    assert_eq!(doc["lambda"], 2);
    let doc = report("invert", &["--precision", "6", "invert", "--g", "Y^2 + Y^3"]);
    assert_eq!(doc["bounds"]["precision"], 6);
}

#[test]
fn classify_flagship() {
    let doc = report("classify", &["classify", "Z^2 - (Y^2-X^3)^2", "--kind", "quadratic", "--direction", "1,0,0"]);
    assert_eq!(doc["case"], "b2");
    assert_eq!(doc["types"], serde_json::json!(["i", "ii"]));
    assert_eq!(doc["outcome"]["moreover"], "pass");
}

#[test]
fn classify_other_cases() {
    let doc = report("classify", &["classify", "Z^2 - X^3*Y^3", "--kind", "monoidal", "--direction", "1,0,0"]);
    assert_eq!(doc["case"], "a");
    assert_eq!(doc["outcome"]["alternative"], "nu(E0 \\ {P})");
    let doc = report("classify", &["classify", "Z^2 - X^2*(1 + Y)", "--kind", "quadratic", "--direction", "0,1,0"]);
    assert_eq!(doc["case"], "b1");
    assert_eq!(doc["outcome"]["image_equal"], true);
}

#[test]
fn resolve_a3() {
    let doc = report("resolve", &["resolve", "Z^2 + X^2 + Y^4"]);
    assert_eq!(doc["height"], 2);
    fn leaves(node: &Value, out: &mut Vec<String>) {
        let children = node["children"].as_array().unwrap();
        if children.is_empty() {
            out.push(node["status"].as_str().unwrap().to_string());
        }
        for c in children {
            leaves(c, out);
        }
    }
    let mut statuses = Vec::new();
    leaves(&doc["tree"], &mut statuses);
    assert!(statuses.iter().all(|s| s == "resolved"));
}

#[test]
fn resolve_dot_and_text() {
    let out = run(&["resolve", "Z^2 - X^2*Y", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph resolution {"));
    assert!(dot.contains("->"));
    let out = run(&["resolve", "Z^2 - X^2*Y", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("monoidal (1:0:0)"));
}

#[test]
fn lemma_report() {
    let doc = report("lemma", &["lemma", "Z^2 - X^2 - X^3"]);
    assert_eq!(doc["verdict"], true);
    assert_eq!(doc["directions_checked"], serde_json::json!(["(1:0:-1)", "(1:0:1)"]));
    let doc = report("lemma", &["lemma", "Z^2 - X^3"]);
    assert_eq!(doc["vacuous"], true);
}

#[test]
fn errors_are_json() {
    let (code, doc) = failure(&["analyze", "Z^2 - X^(1/2)"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["message"], "integer exponent required");
    assert_eq!(doc["error"]["offset"], 8);
    let (code, doc) = failure(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "usage");
    let (_, doc) = failure(&["classify", "Z^2 - X^2*Y", "--kind", "monoidal", "--direction", "1,0,0"]);
    assert_eq!(doc["error"]["kind"], "hypothesis-violated");
    let (_, doc) = failure(&["blowup", "Z^2 - X*Y^3", "--kind", "monoidal", "--direction", "1,0,0"]);
    assert_eq!(doc["error"]["kind"], "not-permitted");
    let (code, _) = failure(&["analyze", "Z^2", "--format", "dot"]);
    assert_eq!(code, 2);
    let (_, doc) = failure(&["invert", "--g", "Y + Y^2"]);
    assert_eq!(doc["error"]["kind"], "transversal");
}
