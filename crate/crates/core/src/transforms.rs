//! Facet-preserving operations on weighted Steiner graphs: subdivision and its
//! inverse, gluing at a terminal and splitting at a cut node, and the Y∇
//! reduction of a degree-three nonterminal.

use std::collections::{BTreeMap, HashSet};

use num_traits::{Signed, Zero};

use crate::cuts::{self, Method};
use crate::error::{Error, Result};
use crate::exactla;
use crate::facets::is_facet_inducing;
use crate::graph::{connected_components, EdgeVector, Graph, NodeSet, SteinerGraph, WeightedSteinerGraph};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    Subdivide,
    Reduce,
    Glue,
    Split,
    YDelta,
}

impl TransformKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TransformKind::Subdivide => "subdivide",
            TransformKind::Reduce => "reduce",
            TransformKind::Glue => "glue",
            TransformKind::Split => "split",
            TransformKind::YDelta => "ydelta",
        }
    }
}

/// One applied operation with its outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformRecord {
    pub kind: TransformKind,
    pub inputs: String,
    pub outputs: Vec<WeightedSteinerGraph>,
    /// Renamed nodes of the second operand of a glue, old name to new name.
    pub renaming: Vec<(String, String)>,
}

fn build(names: Vec<String>, edges: Vec<(usize, usize)>, terminals: NodeSet, weights: Vec<Rational>) -> Result<WeightedSteinerGraph> {
    let sg = SteinerGraph::new(Graph::from_indices(names, edges)?, terminals)?;
    WeightedSteinerGraph::new(sg, EdgeVector::new(weights))
}

fn node_index(g: &Graph, name: &str) -> Result<usize> {
    g.node(name)
}

/// Replaces edge `uv` by `uw` (at the same index) and `wv` (appended), with
/// `w` a new nonterminal carrying the old weight on both halves.
pub fn subdivide(wg: &WeightedSteinerGraph, edge: usize, new_node: &str) -> Result<WeightedSteinerGraph> {
    let g = wg.graph();
    if edge >= g.edge_count() {
        return Err(Error::BadEdgeIndex(edge));
    }
    if g.node(new_node).is_ok() {
        return Err(Error::NodeNameClash(new_node.to_string()));
    }
    let w = g.node_count();
    let (u, v) = g.edge(edge);
    let mut names = g.names().to_vec();
    names.push(new_node.to_string());
    let mut edges = g.edges().to_vec();
    edges[edge] = (u, w);
    edges.push((w, v));
    let mut weights = wg.weights.as_slice().to_vec();
    weights.push(weights[edge].clone());
    build(names, edges, wg.sg.terminals(), weights)
}

/// Removes a degree-two nonterminal `w` with non-adjacent neighbors and equal
/// incident weights, joining its neighbors by an edge of that weight. The new
/// edge takes the position of the lower incident edge.
pub fn reduce(wg: &WeightedSteinerGraph, w: &str) -> Result<WeightedSteinerGraph> {
    let g = wg.graph();
    let wi = node_index(g, w)?;
    let star = g.star(wi);
    if star.len() != 2 {
        return Err(Error::NotDegreeTwo(w.to_string()));
    }
    if wg.sg.is_terminal(wi) {
        return Err(Error::IsTerminal(w.to_string()));
    }
    let other = |e: usize| {
        let (a, b) = g.edge(e);
        if a == wi {
            b
        } else {
            a
        }
    };
    let (e1, e2) = (star[0].min(star[1]), star[0].max(star[1]));
    let (u, v) = (other(e1), other(e2));
    if g.edge_between(u, v).is_some() {
        return Err(Error::NeighborsAdjacent(w.to_string()));
    }
    if wg.weights[e1] != wg.weights[e2] {
        return Err(Error::UnequalIncidentWeights(w.to_string()));
    }
    let shift = |x: usize| if x > wi { x - 1 } else { x };
    let names: Vec<String> = g
        .names()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != wi)
        .map(|(_, n)| n.clone())
        .collect();
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if e == e2 {
            continue;
        }
        edges.push(if e == e1 { (shift(u), shift(v)) } else { (shift(a), shift(b)) });
        weights.push(wg.weights[e].clone());
    }
    let terminals = wg.sg.terminals().iter().map(shift).collect();
    build(names, edges, terminals, weights)
}

/// Identifies terminal `w1` of `wg1` with terminal `w2` of `wg2`. Nodes of
/// `wg2` whose names clash with `wg1` get a `'` suffix. Weights are the
/// minimum integer form of `(γ₂·c₁, γ₁·c₂)`. Returns the renaming applied.
pub fn glue(
    wg1: &WeightedSteinerGraph,
    wg2: &WeightedSteinerGraph,
    w1: &str,
    w2: &str,
    keep_terminal: bool,
) -> Result<(WeightedSteinerGraph, Vec<(String, String)>)> {
    let (g1, g2) = (wg1.graph(), wg2.graph());
    let a = node_index(g1, w1)?;
    let b = node_index(g2, w2)?;
    if !wg1.sg.is_terminal(a) {
        return Err(Error::NotTerminal(w1.to_string()));
    }
    if !wg2.sg.is_terminal(b) {
        return Err(Error::NotTerminal(w2.to_string()));
    }
    let gamma1 = cuts::gamma(wg1, Method::MaxFlow)?;
    let gamma2 = cuts::gamma(wg2, Method::MaxFlow)?;

    let mut names = g1.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut renaming = Vec::new();
    let mut position = vec![a; g2.node_count()];
    for (v, name) in g2.names().iter().enumerate() {
        if v == b {
            continue;
        }
        let mut fresh = name.clone();
        while taken.contains(&fresh) {
            fresh.push('\'');
        }
        if fresh != *name {
            renaming.push((name.clone(), fresh.clone()));
        }
        taken.insert(fresh.clone());
        position[v] = names.len();
        names.push(fresh);
    }
    let mut edges = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(u, v)| (position[u], position[v])));
    let mut terminals = wg1.sg.terminals();
    for t in wg2.sg.terminals().iter() {
        terminals.insert(position[t]);
    }
    if !keep_terminal {
        terminals.remove(a);
    }
    let mut weights: Vec<Rational> = wg1.weights.iter().map(|x| x * &gamma2).collect();
    weights.extend(wg2.weights.iter().map(|x| x * &gamma1));
    let weights = exactla::minimum_integer_form(&EdgeVector::new(weights))?.into_vec();
    Ok((build(names, edges, terminals, weights)?, renaming))
}

fn restriction(wg: &WeightedSteinerGraph, nodes: NodeSet, terminals: NodeSet) -> Result<WeightedSteinerGraph> {
    let (graph, origin) = wg.graph().induced(nodes);
    let position: Vec<usize> = nodes.to_vec();
    let local_terminals = position
        .iter()
        .enumerate()
        .filter(|&(_, v)| terminals.contains(*v))
        .map(|(i, _)| i)
        .collect();
    let weights: Vec<Rational> = origin.iter().map(|&e| wg.weights[e].clone()).collect();
    let weights = exactla::minimum_integer_form(&EdgeVector::new(weights))?;
    WeightedSteinerGraph::new(SteinerGraph::new(graph, local_terminals)?, weights)
}

/// Splits at cut node `w` into the side containing the component of `G − w`
/// with the lexicographically smallest node name, and the rest. Both sides
/// contain `w` as a terminal; weights are minimum integer forms of the
/// restrictions.
pub fn split_at_cut_node(wg: &WeightedSteinerGraph, w: &str) -> Result<(WeightedSteinerGraph, WeightedSteinerGraph)> {
    let g = wg.graph();
    let wi = node_index(g, w)?;
    let components = connected_components(g, NodeSet::singleton(wi), &[]);
    if components.len() < 2 {
        return Err(Error::NotCutNode(w.to_string()));
    }
    let smallest = |c: &NodeSet| c.iter().map(|v| g.name(v)).min().expect("nonempty component");
    let first = *components
        .iter()
        .min_by(|a, b| smallest(a).cmp(smallest(b)))
        .expect("two components");
    let n = g.node_count();
    let side1 = first.with(wi);
    let side2 = first.complement(n);
    let terminals = wg.sg.terminals().with(wi);
    Ok((restriction(wg, side1, terminals)?, restriction(wg, side2, terminals)?))
}

/// Splits at cut nodes until none is left. The order follows repeated
/// splitting at the cut node with the smallest name.
pub fn split_fully(wg: &WeightedSteinerGraph) -> Result<Vec<WeightedSteinerGraph>> {
    let mut done = Vec::new();
    let mut todo = vec![wg.clone()];
    while let Some(current) = todo.pop() {
        let g = current.graph();
        let cut = g.cut_nodes().iter().map(|v| g.name(v).to_string()).min();
        match cut {
            None => done.push(current),
            Some(w) => {
                let (a, b) = split_at_cut_node(&current, &w)?;
                todo.push(b);
                todo.push(a);
            }
        }
    }
    Ok(done)
}

/// Output of [`ydelta`]: the weights given by the reduction formula, and
/// their minimum integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YDeltaResult {
    pub raw: WeightedSteinerGraph,
    pub normalized: WeightedSteinerGraph,
    /// Opposite edges inserted or reweighted, as indices into the output.
    pub triangle_edges: Vec<usize>,
}

/// Replaces a degree-three nonterminal `v` with incident edges `e₁ e₂ e₃` by
/// the opposite edges `fᵢ` for which `ζᵢ = c(δ(v)) − 2c(eᵢ) > 0`, with
/// `c'(fᵢ) = c(fᵢ) + ζᵢ/2`.
pub fn ydelta(wg: &WeightedSteinerGraph, v: &str) -> Result<YDeltaResult> {
    let g = wg.graph();
    let vi = node_index(g, v)?;
    let mut star = g.star(vi);
    if star.len() != 3 {
        return Err(Error::NotDegreeThree(v.to_string()));
    }
    if wg.sg.is_terminal(vi) {
        return Err(Error::IsTerminal(v.to_string()));
    }
    if let Err(reason) = is_facet_inducing(wg) {
        return Err(Error::NotFacetInducing(reason.to_string()));
    }
    star.sort_unstable();
    let ends: Vec<usize> = star
        .iter()
        .map(|&e| {
            let (a, b) = g.edge(e);
            if a == vi {
                b
            } else {
                a
            }
        })
        .collect();
    let total: Rational = star.iter().map(|&e| wg.weights[e].clone()).sum();
    let shift = |x: usize| if x > vi { x - 1 } else { x };
    let names: Vec<String> = g
        .names()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != vi)
        .map(|(_, n)| n.clone())
        .collect();
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if !star.contains(&e) {
            edges.push((shift(a), shift(b)));
            weights.push(wg.weights[e].clone());
        }
    }
    let mut triangle_edges = Vec::new();
    for i in 0..3 {
        let zeta = &total - rational::int(2) * &wg.weights[star[i]];
        if zeta.is_negative() {
            return Err(Error::NotFacetInducing(format!(
                "incident weights at `{v}` violate the triangle inequality"
            )));
        }
        if zeta.is_zero() {
            continue;
        }
        let (x, y) = (shift(ends[(i + 1) % 3]), shift(ends[(i + 2) % 3]));
        let half = zeta / rational::int(2);
        match edges.iter().position(|&(a, b)| (a, b) == (x, y) || (a, b) == (y, x)) {
            Some(f) => {
                weights[f] = &weights[f] + half;
                triangle_edges.push(f);
            }
            None => {
                edges.push((x.min(y), x.max(y)));
                weights.push(half);
                triangle_edges.push(edges.len() - 1);
            }
        }
    }
    let terminals = wg.sg.terminals().iter().map(shift).collect();
    let raw = build(names, edges, terminals, weights)?;
    let normalized = WeightedSteinerGraph::new(raw.sg.clone(), exactla::minimum_integer_form(&raw.weights)?)?;
    Ok(YDeltaResult {
        raw,
        normalized,
        triangle_edges,
    })
}

pub type NameSignature = (Vec<String>, Vec<String>, BTreeMap<(String, String), Rational>);

/// Edge weights keyed by unordered endpoint names, with the terminal names;
/// equal for two weighted Steiner graphs that differ only in node and edge order.
pub fn name_signature(wg: &WeightedSteinerGraph) -> NameSignature {
    let g = wg.graph();
    let mut nodes = g.names().to_vec();
    nodes.sort();
    let mut terminals = g.names_of(wg.sg.terminals());
    terminals.sort();
    let weights = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let (a, b) = (g.name(u).to_string(), g.name(v).to_string());
            (if a < b { (a, b) } else { (b, a) }, wg.weights[e].clone())
        })
        .collect();
    (nodes, terminals, weights)
}

/// The support graph of `wg`: zero-weight edges and the nodes left without
/// edges are dropped.
pub fn restrict_to_support(wg: &WeightedSteinerGraph) -> Result<WeightedSteinerGraph> {
    let g = wg.graph();
    let support = wg.weights.support();
    let covered: NodeSet = support
        .iter()
        .map(|&e| g.edge(e))
        .fold(NodeSet::EMPTY, |acc, (u, v)| acc.with(u).with(v));
    let nodes = covered.to_vec();
    let mut position = vec![usize::MAX; g.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        position[v] = i;
    }
    let names = nodes.iter().map(|&v| g.name(v).to_string()).collect();
    let edges = support.iter().map(|&e| g.edge(e)).map(|(u, v)| (position[u], position[v])).collect();
    let terminals = wg.sg.terminals().intersection(covered).iter().map(|v| position[v]).collect();
    let weights = support.iter().map(|&e| wg.weights[e].clone()).collect();
    build(names, edges, terminals, weights)
}
