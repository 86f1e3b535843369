//! JSON forms of graphs, inequalities, cut sets and catalogue entries.
//!
//! Graphs: `{"nodes": [..], "edges": [["u","v"], ..], "terminals": [..],
//! "weights": ["1", "2/3", ..]}` with `weights` optional. Rationals are
//! always strings `"p"` or `"p/q"`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::facets::{Inequality, Kind};
use crate::graph::{EdgeVector, Graph, NodeSet, SteinerGraph, WeightedSteinerGraph};
use crate::rational::{self, Rational};
use crate::search::CatalogueEntry;
use crate::transforms::TransformRecord;

fn parse_error(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.to_string(),
        message: message.into(),
    }
}

fn string_list(value: &Value, field: &str) -> Result<Vec<String>> {
    let items = value
        .as_array()
        .ok_or_else(|| parse_error(field, "expected an array of strings"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_error(&format!("{field}[{i}]"), "expected a string"))
        })
        .collect()
}

/// A parsed graph document; `weights` is `None` when absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: SteinerGraph,
    pub weights: Option<EdgeVector>,
}

impl GraphDocument {
    /// The weighted graph, with unit weights if none were given.
    pub fn weighted_or_unit(&self) -> WeightedSteinerGraph {
        match &self.weights {
            Some(w) => WeightedSteinerGraph::new(self.graph.clone(), w.clone()).expect("validated weights"),
            None => WeightedSteinerGraph::unit(self.graph.clone()),
        }
    }

    pub fn weighted(&self) -> Result<WeightedSteinerGraph> {
        let w = self
            .weights
            .clone()
            .ok_or_else(|| parse_error("weights", "this command needs edge weights"))?;
        WeightedSteinerGraph::new(self.graph.clone(), w)
    }
}

pub fn parse_graph_value(value: &Value) -> Result<GraphDocument> {
    let object = value
        .as_object()
        .ok_or_else(|| parse_error("document", "expected a JSON object"))?;
    if let Some(key) = object
        .keys()
        .find(|k| !["nodes", "edges", "terminals", "weights"].contains(&k.as_str()))
    {
        return Err(parse_error(key, "unknown field"));
    }
    let get = |field: &str| object.get(field).ok_or_else(|| parse_error(field, "missing field"));
    let nodes = string_list(get("nodes")?, "nodes")?;
    let edge_items = get("edges")?
        .as_array()
        .ok_or_else(|| parse_error("edges", "expected an array of node-name pairs"))?;
    let mut edges = Vec::with_capacity(edge_items.len());
    for (i, item) in edge_items.iter().enumerate() {
        let field = format!("edges[{i}]");
        let pair = string_list(item, &field)?;
        if pair.len() != 2 {
            return Err(parse_error(&field, "expected exactly two node names"));
        }
        edges.push((pair[0].clone(), pair[1].clone()));
    }
    let terminals = string_list(get("terminals")?, "terminals")?;
    let graph = Graph::new(&nodes, &edges).map_err(|e| match e {
        Error::UnknownNode(name) => parse_error("edges", format!("unknown node `{name}`")),
        other => parse_error("edges", other.to_string()),
    })?;
    let mut t = NodeSet::EMPTY;
    for (i, name) in terminals.iter().enumerate() {
        let v = graph
            .node(name)
            .map_err(|_| parse_error(&format!("terminals[{i}]"), format!("unknown node `{name}`")))?;
        t.insert(v);
    }
    if t.len() != terminals.len() {
        return Err(parse_error("terminals", "duplicate terminal"));
    }
    let graph = SteinerGraph::new(graph, t).map_err(|e| parse_error("terminals", e.to_string()))?;
    let weights = match object.get("weights") {
        None | Some(Value::Null) => None,
        Some(value) => {
            let items = string_list(value, "weights")?;
            if items.len() != graph.edge_count() {
                return Err(parse_error(
                    "weights",
                    format!("expected {} weights, got {}", graph.edge_count(), items.len()),
                ));
            }
            let parsed = items
                .iter()
                .enumerate()
                .map(|(i, s)| rational::parse(s, &format!("weights[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            if let Some(i) = parsed.iter().position(|x| !rational::is_nonnegative(x)) {
                return Err(parse_error(&format!("weights[{i}]"), "weight is negative"));
            }
            Some(EdgeVector::new(parsed))
        }
    };
    Ok(GraphDocument { graph, weights })
}

pub fn parse_graph(text: &str) -> Result<GraphDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error("document", e.to_string()))?;
    parse_graph_value(&value)
}

fn rationals(v: &EdgeVector) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

pub fn graph_to_json(g: &SteinerGraph, weights: Option<&EdgeVector>) -> Value {
    let graph = g.graph();
    let mut object = Map::new();
    object.insert("nodes".into(), json!(graph.names()));
    let edges: Vec<[&str; 2]> = graph.edges().iter().map(|&(u, v)| [graph.name(u), graph.name(v)]).collect();
    object.insert("edges".into(), json!(edges));
    object.insert("terminals".into(), json!(graph.names_of(g.terminals())));
    if let Some(w) = weights {
        object.insert("weights".into(), json!(rationals(w)));
    }
    Value::Object(object)
}

pub fn weighted_to_json(wg: &WeightedSteinerGraph) -> Value {
    graph_to_json(&wg.sg, Some(&wg.weights))
}

/// `{"coeffs": {"<edge>": "p/q", ..}, "rhs": "p/q", "support_size": n, "kind": ..}`,
/// sparse by edge index.
pub fn inequality_to_json(ineq: &Inequality) -> Value {
    let coeffs: Map<String, Value> = ineq
        .support()
        .into_iter()
        .map(|e| (e.to_string(), json!(rational::format(&ineq.coeffs[e]))))
        .collect();
    json!({
        "coeffs": coeffs,
        "rhs": rational::format(&ineq.rhs),
        "support_size": ineq.support().len(),
        "kind": ineq.kind.as_str(),
    })
}

fn kind_from_str(s: &str) -> Option<Kind> {
    [Kind::Tree, Kind::Cactus, Kind::Oracle, Kind::Other]
        .into_iter()
        .find(|k| k.as_str() == s)
}

/// Inverse of [`inequality_to_json`] for a host with `edge_count` edges.
pub fn inequality_from_json(value: &Value, edge_count: usize) -> Result<Inequality> {
    let object = value
        .as_object()
        .ok_or_else(|| parse_error("inequality", "expected a JSON object"))?;
    let coeff_map = object
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| parse_error("coeffs", "expected an object"))?;
    let mut coeffs = vec![rational::zero(); edge_count];
    for (key, v) in coeff_map {
        let field = format!("coeffs.{key}");
        let e: usize = key.parse().map_err(|_| parse_error(&field, "edge index expected"))?;
        if e >= edge_count {
            return Err(parse_error(&field, "edge index out of range"));
        }
        let s = v.as_str().ok_or_else(|| parse_error(&field, "expected a string"))?;
        coeffs[e] = rational::parse(s, &field)?;
    }
    let rhs = object
        .get("rhs")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_error("rhs", "expected a string"))?;
    let rhs = rational::parse(rhs, "rhs")?;
    let kind = object
        .get("kind")
        .and_then(Value::as_str)
        .and_then(kind_from_str)
        .ok_or_else(|| parse_error("kind", "expected tree, cactus, oracle or other"))?;
    Ok(Inequality::new(EdgeVector::new(coeffs), rhs, kind))
}

pub fn node_set_to_json(graph: &Graph, set: NodeSet) -> Value {
    json!(graph.names_of(set))
}

pub fn catalogue_entry_to_json(entry: &CatalogueEntry) -> Value {
    let weights: Vec<Value> = entry
        .facet_weights
        .iter()
        .map(|(w, rhs)| json!({"weights": rationals(w), "rhs": rational::format(rhs)}))
        .collect();
    json!({
        "graph": graph_to_json(&entry.graph, None),
        "facet_weights": weights,
    })
}

pub fn transform_record_to_json(record: &TransformRecord) -> Value {
    let renaming: BTreeMap<&str, &str> = record
        .renaming
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    json!({
        "kind": record.kind.as_str(),
        "inputs": record.inputs,
        "outputs": record.outputs.iter().map(weighted_to_json).collect::<Vec<_>>(),
        "renaming": renaming,
    })
}

/// Human-readable `a·x₀ + .. ≥ rhs`.
pub fn inequality_to_text(ineq: &Inequality, graph: &Graph) -> String {
    let terms: Vec<String> = ineq
        .support()
        .into_iter()
        .map(|e| {
            let (u, v) = graph.edge(e);
            let c = &ineq.coeffs[e];
            let name = format!("x({}-{})", graph.name(u), graph.name(v));
            if *c == rational::one() {
                name
            } else {
                format!("{} {name}", rational::format(c))
            }
        })
        .collect();
    format!("{} >= {}  [{}]", terms.join(" + "), rational::format(&ineq.rhs), ineq.kind.as_str())
}

pub fn rational_to_json(x: &Rational) -> Value {
    json!(rational::format(x))
}
