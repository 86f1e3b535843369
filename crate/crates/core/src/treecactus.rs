//! Steiner trees and Steiner cacti: recognition, their facet inequalities,
//! enumeration inside a host graph, and the facet lists built from them.

use crate::error::{Error, Result};
use crate::facets::{canonical_list, Inequality, Kind};
use crate::graph::{biconnected_components, EdgeVector, Graph, NodeSet, SteinerGraph};
use crate::rational::{self, Rational};

/// Largest edge count accepted by the subgraph enumerations.
pub const SUBGRAPH_EDGE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    SteinerTree,
    SteinerCactus,
    Neither,
}

/// Cycles and bridges of a cactus, as edge indices of the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CactusDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub bridges: Vec<usize>,
    /// Per cycle, the number of its nodes that are cut nodes of the cactus.
    pub cycle_degrees: Vec<usize>,
}

/// `max(0, 3 − deg(C))` for cycle `C`.
pub fn defect(dec: &CactusDecomposition, cycle_index: usize) -> Result<usize> {
    let deg = dec
        .cycle_degrees
        .get(cycle_index)
        .ok_or(Error::BadIndex(cycle_index))?;
    Ok(3usize.saturating_sub(*deg))
}

/// Structure of a connected edge subset of a host graph.
struct Shape {
    nodes: NodeSet,
    leaves: NodeSet,
    /// `None` unless every block is a bridge or a cycle.
    cactus: Option<CactusDecomposition>,
    cut_nodes: NodeSet,
}

fn edge_mask_list(mask: u64) -> Vec<usize> {
    NodeSet::from_bits(mask).to_vec()
}

/// Blocks of the subgraph formed by `edges`, as host edge indices.
fn blocks_of(graph: &Graph, edges: &[usize]) -> Vec<Vec<usize>> {
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&e| graph.edge(e)).collect();
    biconnected_components(graph.node_count(), &pairs)
        .into_iter()
        .map(|b| b.into_iter().map(|i| edges[i]).collect())
        .collect()
}

fn block_nodes(graph: &Graph, block: &[usize]) -> NodeSet {
    block
        .iter()
        .map(|&e| graph.edge(e))
        .fold(NodeSet::EMPTY, |acc, (u, v)| acc.with(u).with(v))
}

fn is_cactus_edge_set(graph: &Graph, edges: &[usize]) -> bool {
    blocks_of(graph, edges)
        .iter()
        .all(|b| b.len() == 1 || b.len() == block_nodes(graph, b).len())
}

fn analyze(graph: &Graph, edges: &[usize]) -> Shape {
    let mut degree = vec![0usize; graph.node_count()];
    let mut nodes = NodeSet::EMPTY;
    for &e in edges {
        let (u, v) = graph.edge(e);
        degree[u] += 1;
        degree[v] += 1;
        nodes = nodes.with(u).with(v);
    }
    let leaves = nodes.iter().filter(|&v| degree[v] == 1).collect();
    let blocks = blocks_of(graph, edges);
    let mut membership = vec![0usize; graph.node_count()];
    for b in &blocks {
        for v in block_nodes(graph, b).iter() {
            membership[v] += 1;
        }
    }
    let cut_nodes: NodeSet = nodes.iter().filter(|&v| membership[v] >= 2).collect();
    let cactus = blocks
        .iter()
        .all(|b| b.len() == 1 || b.len() == block_nodes(graph, b).len())
        .then(|| {
            let mut cycles = Vec::new();
            let mut bridges = Vec::new();
            for b in &blocks {
                if b.len() == 1 {
                    bridges.push(b[0]);
                } else {
                    cycles.push(b.clone());
                }
            }
            cycles.sort();
            bridges.sort_unstable();
            let cycle_degrees = cycles
                .iter()
                .map(|c| block_nodes(graph, c).intersection(cut_nodes).len())
                .collect();
            CactusDecomposition {
                cycles,
                bridges,
                cycle_degrees,
            }
        });
    Shape {
        nodes,
        leaves,
        cactus,
        cut_nodes,
    }
}

/// Classifies the connected subgraph formed by `edges` with terminal set
/// `terminals`, which must lie on the subgraph.
fn classify_edges(graph: &Graph, edges: &[usize], terminals: NodeSet) -> (Classification, Shape) {
    let shape = analyze(graph, edges);
    let neither = |shape| (Classification::Neither, shape);
    if edges.is_empty() || !terminals.is_subset(shape.nodes) || !shape.leaves.is_subset(terminals) {
        return neither(shape);
    }
    let Some(dec) = &shape.cactus else {
        return neither(shape);
    };
    if dec.cycles.is_empty() {
        return (Classification::SteinerTree, shape);
    }
    let qualifying = shape.cut_nodes.union(terminals);
    let ok = dec
        .cycles
        .iter()
        .all(|c| block_nodes(graph, c).intersection(qualifying).len() >= 3);
    if ok {
        (Classification::SteinerCactus, shape)
    } else {
        neither(shape)
    }
}

/// Steiner tree: a tree whose leaves are terminals. Steiner cactus: a cactus
/// with at least one cycle, leaves in `T`, and at least three cut nodes or
/// terminals on every cycle.
pub fn classify_tree_cactus(g: &SteinerGraph) -> Classification {
    let edges: Vec<usize> = (0..g.edge_count()).collect();
    classify_edges(g.graph(), &edges, g.terminals()).0
}

/// The decomposition of `g` into cycles and bridges, if `g` is a connected cactus.
pub fn decompose(g: &Graph) -> Option<CactusDecomposition> {
    if !g.is_connected() {
        return None;
    }
    let edges: Vec<usize> = (0..g.edge_count()).collect();
    analyze(g, &edges).cactus
}

fn inequality_for(graph: &Graph, edges: &[usize], class: Classification, dec: Option<&CactusDecomposition>) -> Inequality {
    let mut coeffs = vec![rational::zero(); graph.edge_count()];
    match class {
        Classification::SteinerTree => {
            for &e in edges {
                coeffs[e] = rational::one();
            }
            Inequality::new(EdgeVector::new(coeffs), rational::one(), Kind::Tree)
        }
        Classification::SteinerCactus => {
            let dec = dec.expect("cactus decomposition");
            for c in &dec.cycles {
                for &e in c {
                    coeffs[e] = rational::one();
                }
            }
            for &e in &dec.bridges {
                coeffs[e] = rational::int(2);
            }
            Inequality::new(EdgeVector::new(coeffs), rational::int(2), Kind::Cactus)
        }
        Classification::Neither => unreachable!("no inequality for non-tree non-cactus"),
    }
}

/// All-ones with right-hand side 1 for a Steiner tree; 1 on cycle edges, 2 on
/// bridges and right-hand side 2 for a Steiner cactus.
pub fn canonical_inequality(g: &SteinerGraph) -> Result<Inequality> {
    let edges: Vec<usize> = (0..g.edge_count()).collect();
    let (class, shape) = classify_edges(g.graph(), &edges, g.terminals());
    if class == Classification::Neither {
        return Err(Error::NotTreeOrCactus);
    }
    Ok(inequality_for(g.graph(), &edges, class, shape.cactus.as_ref()))
}

/// Connected edge subsets containing the first terminal and reaching every
/// terminal, grown by deciding frontier edges one at a time.
struct Grower<'a> {
    graph: &'a Graph,
    terminals: NodeSet,
    allow_cycles: bool,
    found: Vec<u64>,
}

impl Grower<'_> {
    fn reachable(&self, from: NodeSet, excluded: u64) -> NodeSet {
        let mut seen = from;
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
                if excluded >> e & 1 == 1 {
                    continue;
                }
                if seen.contains(u) != seen.contains(v) {
                    seen = seen.with(u).with(v);
                    changed = true;
                }
            }
        }
        seen
    }

    fn grow(&mut self, nodes: NodeSet, included: u64, decided: u64) {
        let excluded = decided & !included;
        if !self.terminals.is_subset(self.reachable(nodes, excluded)) {
            return;
        }
        let next = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .find(|&(e, &(u, v))| decided >> e & 1 == 0 && (nodes.contains(u) || nodes.contains(v)));
        let Some((e, &(u, v))) = next else {
            if self.terminals.is_subset(nodes) && included != 0 {
                self.found.push(included);
            }
            return;
        };
        let bit = 1u64 << e;
        let chord = nodes.contains(u) && nodes.contains(v);
        if !chord || self.allow_cycles {
            let with = included | bit;
            if !chord || is_cactus_edge_set(self.graph, &edge_mask_list(with)) {
                self.grow(nodes.with(u).with(v), with, decided | bit);
            }
        }
        self.grow(nodes, included, decided | bit);
    }
}

fn grow_all(g: &SteinerGraph, allow_cycles: bool) -> Result<Vec<u64>> {
    let m = g.edge_count();
    if m > SUBGRAPH_EDGE_LIMIT {
        return Err(Error::too_large("edge count", SUBGRAPH_EDGE_LIMIT, m));
    }
    let root = g.terminals().first().expect("at least two terminals");
    let mut grower = Grower {
        graph: g.graph(),
        terminals: g.terminals(),
        allow_cycles,
        found: Vec::new(),
    };
    grower.grow(NodeSet::singleton(root), 0, 0);
    let mut found = grower.found;
    found.sort_unstable();
    Ok(found)
}

fn subgraphs_of_class(g: &SteinerGraph, class: Classification) -> Result<Vec<(Vec<usize>, Shape)>> {
    let masks = grow_all(g, class == Classification::SteinerCactus)?;
    Ok(masks
        .into_iter()
        .filter_map(|mask| {
            let edges = edge_mask_list(mask);
            let (c, shape) = classify_edges(g.graph(), &edges, g.terminals());
            (c == class).then_some((edges, shape))
        })
        .collect())
}

/// Edge sets of all Steiner subtrees of `g`.
pub fn enumerate_steiner_subtrees(g: &SteinerGraph) -> Result<Vec<Vec<usize>>> {
    Ok(subgraphs_of_class(g, Classification::SteinerTree)?
        .into_iter()
        .map(|(e, _)| e)
        .collect())
}

/// Edge sets of all Steiner subcacti of `g`; cut nodes are those of the subgraph.
pub fn enumerate_steiner_subcacti(g: &SteinerGraph) -> Result<Vec<Vec<usize>>> {
    Ok(subgraphs_of_class(g, Classification::SteinerCactus)?
        .into_iter()
        .map(|(e, _)| e)
        .collect())
}

/// All nontrivial facets of the Steiner cut dominant of `g` when `|T| ≤ 5`:
/// the Steiner subtree and Steiner subcactus inequalities.
pub fn enumerate_facets_le5(g: &SteinerGraph) -> Result<Vec<Inequality>> {
    let tau = g.terminals().len();
    if tau > 5 {
        return Err(Error::TooManyTerminals(tau));
    }
    let mut out = Vec::new();
    for class in [Classification::SteinerTree, Classification::SteinerCactus] {
        for (edges, shape) in subgraphs_of_class(g, class)? {
            out.push(inequality_for(g.graph(), &edges, class, shape.cactus.as_ref()));
        }
    }
    Ok(canonical_list(out))
}

/// Facets of the cut dominant of `g` with Steiner degree at most five:
/// spanning trees with at most five leaves, and spanning cacti whose leaf
/// count plus cycle defects is at most five.
pub fn cut_dominant_degree5_facets(g: &Graph) -> Result<Vec<Inequality>> {
    let sg = SteinerGraph::all_terminal(g.clone())?;
    let mut out = Vec::new();
    for (edges, shape) in subgraphs_of_class(&sg, Classification::SteinerTree)? {
        if shape.leaves.len() <= 5 {
            out.push(inequality_for(g, &edges, Classification::SteinerTree, None));
        }
    }
    for (edges, shape) in subgraphs_of_class(&sg, Classification::SteinerCactus)? {
        let dec = shape.cactus.as_ref().expect("cactus");
        let defects: usize = (0..dec.cycles.len()).map(|i| defect(dec, i).expect("index")).sum();
        if shape.leaves.len() + defects <= 5 {
            out.push(inequality_for(g, &edges, Classification::SteinerCactus, Some(dec)));
        }
    }
    Ok(canonical_list(out))
}

/// Right-hand side of a tree or cactus inequality.
pub fn canonical_rhs(class: Classification) -> Option<Rational> {
    match class {
        Classification::SteinerTree => Some(rational::one()),
        Classification::SteinerCactus => Some(rational::int(2)),
        Classification::Neither => None,
    }
}
