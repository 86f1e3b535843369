mod common;

use std::collections::BTreeSet;
use std::process::Command;

use rand::Rng;
use serde_json::{json, Value};

use common::*;
use steinercut::cli::run;
use steinercut::json::{graph_to_json, inequality_from_json, parse_graph_value};
use steinercut::oracle::{validate_inequality, Validity};
use steinercut::SteinerGraph;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str], input: &str) -> Output {
    let mut stdin = input.as_bytes();
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let argv = std::iter::once("steinercut").chain(args.iter().copied());
    let code = run(argv, &mut stdin, &mut stdout, &mut stderr);
    Output {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn json_of(out: &Output) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

const TRIANGLE: &str = r#"{"nodes": ["a","b","c"], "edges": [["a","b"],["b","c"],["a","c"]], "terminals": ["a","b","c"]}"#;
const PATH: &str = r#"{"nodes": ["s","a","t"], "edges": [["s","a"],["a","t"]], "terminals": ["s","t"], "weights": ["1","1"]}"#;

fn prism_document() -> String {
    json!({
        "nodes": ["v1","v2","v3","v4","v5","v6"],
        "edges": [["v1","v2"],["v3","v4"],["v5","v6"],["v1","v3"],["v3","v5"],["v5","v1"],["v2","v4"],["v4","v6"],["v6","v2"]],
        "terminals": ["v1","v2","v3","v4","v5","v6"],
        "weights": ["2","2","2","1","1","1","1","1","1"]
    })
    .to_string()
}

fn facet_set(value: &Value) -> BTreeSet<String> {
    value["facets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| format!("{}|{}", f["coeffs"], f["rhs"]))
        .collect()
}

#[test]
fn triangle_classify_lists_four_facets() {
    let out = json_of(&invoke(&["facets", "--method", "classify", "--input", "-"], TRIANGLE));
    assert_eq!(out["count"], json!(4));
    let rhs: Vec<&str> = out["facets"].as_array().unwrap().iter().map(|f| f["rhs"].as_str().unwrap()).collect();
    assert_eq!(rhs, ["1", "1", "1", "2"]);
    let oracle = json_of(&invoke(&["facets", "--input", "-"], TRIANGLE));
    assert_eq!(facet_set(&out), facet_set(&oracle));
}

#[test]
fn mincut_on_the_path() {
    for method in ["maxflow", "enumerate"] {
        let out = json_of(&invoke(&["mincut", "--method", method, "--input", "-"], PATH));
        assert_eq!(out, json!({"gamma": "1", "witness": ["s"]}));
    }
}

#[test]
fn verify_certifies_the_prism() {
    let out = json_of(&invoke(&["verify", "--input", "-"], &prism_document()));
    assert_eq!(out["facet"], json!(true));
    assert_eq!(out["gamma"], json!("4"));
    assert_eq!(out["root_basis"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_rejects_a_non_facet() {
    let doc = r#"{"nodes": ["s","a","t"], "edges": [["s","a"],["a","t"]], "terminals": ["s","t"], "weights": ["1","2"]}"#;
    let out = json_of(&invoke(&["verify", "--input", "-"], doc));
    assert_eq!(out["facet"], json!(false));
    assert!(out["reason"].is_string());
}

#[test]
fn validation_errors_exit_two_and_name_the_field() {
    let out = invoke(&["facets", "--input", "-"], r#"{"nodes": ["s","t"], "edges": [["s","x"]], "terminals": ["s","t"]}"#);
    assert_eq!(out.code, 2);
    assert_eq!(out.stderr.trim().lines().count(), 1);
    assert!(out.stderr.contains("edges"), "{}", out.stderr);

    let out = invoke(&["verify", "--input", "-"], TRIANGLE);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("weights"), "{}", out.stderr);

    assert_eq!(invoke(&["facets"], TRIANGLE).code, 2);
    assert_eq!(invoke(&["frobnicate"], TRIANGLE).code, 2);
}

#[test]
fn guards_exit_three() {
    assert_eq!(invoke(&["--max-size", "2", "facets", "--input", "-"], TRIANGLE).code, 3);
    assert_eq!(invoke(&["search-irreducible", "--terminals", "4", "--max-nodes", "7"], "").code, 3);
    let ring: Vec<String> = (0..9).map(|i| format!("n{i}")).collect();
    let doc = json!({
        "nodes": ring,
        "edges": (0..9).map(|i| [format!("n{i}"), format!("n{}", (i + 1) % 9)]).collect::<Vec<_>>(),
        "terminals": ring,
    });
    assert_eq!(invoke(&["facets", "--input", "-"], &doc.to_string()).code, 3);
}

#[test]
fn help_exits_zero() {
    let out = invoke(&["--help"], "");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("search-irreducible"));
}

#[test]
fn classify_and_oracle_agree_on_random_inputs() {
    let mut r = rng(7);
    for _ in 0..60 {
        let n = r.gen_range(3..=6);
        let m = r.gen_range(n - 1..=(n * (n - 1) / 2).min(9));
        let g = random_connected(&mut r, n, m);
        let k = r.gen_range(2..=n.min(5));
        let t = random_terminals(&mut r, n, k);
        let doc = graph_to_json(&SteinerGraph::new(g, t).unwrap(), None).to_string();
        let classify = json_of(&invoke(&["facets", "--method", "classify", "--input", "-"], &doc));
        let oracle = json_of(&invoke(&["facets", "--method", "oracle", "--input", "-"], &doc));
        assert_eq!(facet_set(&classify), facet_set(&oracle), "{doc}");
    }
}

#[test]
fn facet_output_parses_back() {
    let doc = parse_graph_value(&serde_json::from_str(TRIANGLE).unwrap()).unwrap();
    let out = json_of(&invoke(&["facets", "--input", "-"], TRIANGLE));
    for f in out["facets"].as_array().unwrap() {
        let ineq = inequality_from_json(f, 3).unwrap();
        assert_eq!(validate_inequality(&doc.graph, &ineq).unwrap(), Validity::Valid);
    }
}

#[test]
fn transforms_emit_parseable_graphs() {
    let out = json_of(&invoke(
        &["transform", "--op", "subdivide", "--edge", "0", "--new-node", "w", "--input", "-"],
        PATH,
    ));
    assert_eq!(out["kind"], json!("subdivide"));
    let graph = &out["outputs"][0];
    let parsed = parse_graph_value(graph).unwrap();
    assert_eq!(parsed.graph.node_count(), 4);
    let back = json_of(&invoke(&["transform", "--op", "reduce", "--node", "w", "--input", "-"], &graph.to_string()));
    let reduced = parse_graph_value(&back["outputs"][0]).unwrap();
    let original = parse_graph_value(&serde_json::from_str(PATH).unwrap()).unwrap();
    assert_eq!(reduced, original);

    let second = std::env::temp_dir().join(format!("steinercut-glue-{}.json", std::process::id()));
    std::fs::write(&second, PATH).unwrap();
    let out = json_of(&invoke(
        &[
            "transform", "--op", "glue", "--node", "t", "--second", second.to_str().unwrap(),
            "--second-node", "s", "--input", "-",
        ],
        PATH,
    ));
    std::fs::remove_file(&second).ok();
    let glued = parse_graph_value(&out["outputs"][0]).unwrap();
    assert_eq!(glued.graph.node_count(), 5);
    assert!(!out["renaming"].as_object().unwrap().is_empty());
}

#[test]
fn laminar_basis_and_steiner_degree() {
    let out = json_of(&invoke(&["laminar-basis", "--input", "-"], &prism_document()));
    assert_eq!(out.as_array().unwrap().len(), 9);
    let out = json_of(&invoke(&["steiner-degree", "--input", "-"], &prism_document()));
    assert_eq!(out["rhs"], json!("4"));
    assert!(out["steiner_degree"].as_u64().unwrap() <= 6);
}

#[test]
fn search_returns_the_cycle() {
    let out = json_of(&invoke(&["search-irreducible", "--terminals", "4", "--max-nodes", "6"], ""));
    let entries = out.as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["facet_weights"], json!([{"weights": ["1", "1", "1", "1"], "rhs": "2"}]));
}

#[test]
fn text_format() {
    let out = invoke(&["--format", "text", "facets", "--input", "-"], TRIANGLE);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains(">= 2"), "{}", out.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_steinercut");
    let output = Command::new(bin).args(["mincut", "--input", "/nonexistent/graph.json"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("input"));
    let output = Command::new(bin).arg("--version").output().unwrap();
    assert!(output.status.success());
}
