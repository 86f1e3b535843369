//! Simple undirected graphs, Steiner graphs, cuts and edge-space vectors.
//!
//! Nodes carry opaque string names but are addressed internally by their
//! position in the declared node list; edge `i` of a [`Graph`] is coordinate
//! `i` of every [`EdgeVector`] over it. Node subsets are [`NodeSet`] bitmasks,
//! which caps graphs at [`MAX_NODES`] nodes.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const MAX_NODES: usize = 64;

/// A set of node indices in `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        NodeSet(1 << v)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        NodeSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        NodeSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: Self) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        NodeSet(self.0 & !other.0)
    }

    /// Complement within `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        NodeSet(!self.0 & NodeSet::full(n).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> NodeSetIter {
        NodeSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = NodeSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

pub struct NodeSetIter(u64);

impl Iterator for NodeSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A simple undirected graph with named nodes and an ordered edge list.
#[derive(Clone)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<NodeSet>,
    edge_lookup: HashMap<(usize, usize), usize>,
}

impl Graph {
    /// Builds a graph from node names and edges given by endpoint names.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate node `{name}`")));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::UnknownNode(s.to_string()))
            };
            pairs.push((lookup(u.as_ref())?, lookup(v.as_ref())?));
        }
        Graph::from_indices(names, pairs)
    }

    /// Builds a graph from node names and edges given by node positions.
    pub fn from_indices(names: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = names.len();
        if n > MAX_NODES {
            return Err(Error::too_large("node count", MAX_NODES, n));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate node `{name}`")));
            }
        }
        let mut adjacency = vec![NodeSet::EMPTY; n];
        let mut edge_lookup = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {i} has an undeclared endpoint")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {i} is a loop at `{}`", names[u])));
            }
            if edge_lookup.insert(key(u, v), i).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge between `{}` and `{}`",
                    names[u], names[v]
                )));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph {
            names,
            index,
            edges,
            adjacency,
            edge_lookup,
        })
    }

    /// Graph on nodes named `prefix0, prefix1, ...`.
    pub fn numbered(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let names = (0..n).map(|i| i.to_string()).collect();
        Graph::from_indices(names, edges.to_vec())
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn node(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_lookup.get(&key(u, v)).copied()
    }

    pub fn neighbors(&self, v: usize) -> NodeSet {
        self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.node_count())
    }

    /// Edge indices incident to `v`, in edge order.
    pub fn star(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v)
            .collect()
    }

    /// Whether edge `e` has exactly one endpoint in `s`.
    pub fn crosses(&self, s: NodeSet, e: usize) -> bool {
        let (u, v) = self.edges[e];
        s.contains(u) != s.contains(v)
    }

    /// Edges with exactly one endpoint in `s`, in edge order.
    pub fn cut_edges(&self, s: NodeSet) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.crosses(s, e)).collect()
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<NodeSet> {
        names.iter().map(|s| self.node(s.as_ref())).collect()
    }

    pub fn names_of(&self, set: NodeSet) -> Vec<String> {
        set.iter().map(|v| self.names[v].clone()).collect()
    }

    /// Nodes reachable from `start` inside `within`, ignoring `removed_edges`.
    fn reach(&self, start: usize, within: NodeSet, removed_edges: &[bool]) -> NodeSet {
        let mut seen = NodeSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in self.adjacency[u].intersection(within).difference(seen).iter() {
                if !removed_edges.is_empty() {
                    let e = self.edge_lookup[&key(u, w)];
                    if removed_edges[e] {
                        continue;
                    }
                }
                seen.insert(w);
                stack.push(w);
            }
        }
        seen
    }

    /// Whether the subgraph induced by `set` is connected (the empty set is not).
    pub fn induces_connected(&self, set: NodeSet) -> bool {
        match set.first() {
            None => false,
            Some(v) => self.reach(v, set, &[]) == set,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.induces_connected(self.all_nodes())
    }

    pub fn is_cut_node(&self, v: usize) -> bool {
        let rest = self.all_nodes().without(v);
        !rest.is_empty() && !self.induces_connected(rest)
    }

    pub fn cut_nodes(&self) -> NodeSet {
        (0..self.node_count()).filter(|&v| self.is_cut_node(v)).collect()
    }

    pub fn is_bridge(&self, e: usize) -> bool {
        let mut removed = vec![false; self.edges.len()];
        removed[e] = true;
        let (u, v) = self.edges[e];
        !self.reach(u, self.all_nodes(), &removed).contains(v)
    }

    /// The graph with edges restricted to `keep` (same node list).
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        let edges = keep.iter().map(|&e| self.edges[e]).collect();
        Graph::from_indices(self.names.clone(), edges).expect("subgraph of a valid graph")
    }

    /// The subgraph induced by `set`, with node order preserved. Returns the
    /// graph and, for each new edge, its index in `self`.
    pub fn induced(&self, set: NodeSet) -> (Graph, Vec<usize>) {
        let nodes = set.to_vec();
        let mut position = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            position[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if set.contains(u) && set.contains(v) {
                edges.push((position[u], position[v]));
                origin.push(e);
            }
        }
        let names = nodes.iter().map(|&v| self.names[v].clone()).collect();
        let graph = Graph::from_indices(names, edges).expect("induced subgraph of a valid graph");
        (graph, origin)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        f.debug_struct("Graph")
            .field("nodes", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A connected graph together with a terminal set of size at least two.
#[derive(Clone, PartialEq, Eq)]
pub struct SteinerGraph {
    graph: Graph,
    terminals: NodeSet,
}

impl SteinerGraph {
    pub fn new(graph: Graph, terminals: NodeSet) -> Result<Self> {
        if !terminals.is_subset(graph.all_nodes()) {
            return Err(Error::InvalidGraph("terminal outside the node set".into()));
        }
        if terminals.len() < 2 {
            return Err(Error::InvalidGraph(format!(
                "a Steiner graph needs at least two terminals, got {}",
                terminals.len()
            )));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(SteinerGraph { graph, terminals })
    }

    pub fn from_names<S: AsRef<str>>(nodes: &[S], edges: &[(S, S)], terminals: &[S]) -> Result<Self> {
        let graph = Graph::new(nodes, edges)?;
        let terminals = graph.set_from_names(terminals)?;
        SteinerGraph::new(graph, terminals)
    }

    /// All nodes are terminals.
    pub fn all_terminal(graph: Graph) -> Result<Self> {
        let all = graph.all_nodes();
        SteinerGraph::new(graph, all)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn terminals(&self) -> NodeSet {
        self.terminals
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals.contains(v)
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// The reference terminal kept outside every canonical cut set: the
    /// terminal with the lexicographically largest name.
    pub fn reference_terminal(&self) -> usize {
        self.terminals
            .iter()
            .max_by(|&a, &b| self.graph.name(a).cmp(self.graph.name(b)))
            .expect("at least two terminals")
    }

    /// The representative of `{s, V \ s}` that avoids the reference terminal.
    pub fn canonical(&self, s: NodeSet) -> NodeSet {
        if s.contains(self.reference_terminal()) {
            s.complement(self.node_count())
        } else {
            s
        }
    }

    pub fn separates_terminals(&self, s: NodeSet) -> bool {
        s.meets(self.terminals) && !self.terminals.is_subset(s)
    }
}

impl fmt::Debug for SteinerGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SteinerGraph")
            .field("graph", &self.graph)
            .field("terminals", &self.graph.names_of(self.terminals))
            .finish()
    }
}

/// A node set `S` standing for the cut `δ(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutSet {
    pub members: NodeSet,
}

impl CutSet {
    pub fn new(members: NodeSet) -> Self {
        CutSet { members }
    }

    pub fn from_names<S: AsRef<str>>(graph: &Graph, names: &[S]) -> Result<Self> {
        Ok(CutSet::new(graph.set_from_names(names)?))
    }

    /// Checks `∅ ⊊ S ⊊ V(G)`.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let all = graph.all_nodes();
        if self.members.is_empty() {
            return Err(Error::InvalidCutSet("S is empty".into()));
        }
        if !self.members.is_subset(all) {
            return Err(Error::InvalidCutSet("S contains unknown nodes".into()));
        }
        if self.members == all {
            return Err(Error::InvalidCutSet("S is the whole node set".into()));
        }
        Ok(())
    }

    pub fn names(&self, graph: &Graph) -> Vec<String> {
        graph.names_of(self.members)
    }
}

/// A rational vector indexed by the edges of a host graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeVector(Vec<Rational>);

impl EdgeVector {
    pub fn new(components: Vec<Rational>) -> Self {
        EdgeVector(components)
    }

    pub fn from_ints(components: &[i64]) -> Self {
        EdgeVector(components.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        EdgeVector(vec![rational::zero(); len])
    }

    pub fn ones(len: usize) -> Self {
        EdgeVector(vec![rational::one(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Indices of the nonzero components.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn scaled(&self, factor: &Rational) -> EdgeVector {
        EdgeVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Weight of the edge set `edges`.
    pub fn sum_over(&self, edges: &[usize]) -> Rational {
        edges.iter().map(|&e| &self.0[e]).sum()
    }

    /// Weight of the cut `δ(s)` in `graph`.
    pub fn cut_weight(&self, graph: &Graph, s: NodeSet) -> Rational {
        (0..graph.edge_count())
            .filter(|&e| graph.crosses(s, e))
            .map(|e| &self.0[e])
            .sum()
    }
}

impl Index<usize> for EdgeVector {
    type Output = Rational;

    fn index(&self, index: usize) -> &Rational {
        &self.0[index]
    }
}

impl fmt::Debug for EdgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(rational::format))
            .finish()
    }
}

/// A Steiner graph with a nonnegative weight on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSteinerGraph {
    pub sg: SteinerGraph,
    pub weights: EdgeVector,
}

impl WeightedSteinerGraph {
    pub fn new(sg: SteinerGraph, weights: EdgeVector) -> Result<Self> {
        if weights.len() != sg.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: sg.edge_count(),
                actual: weights.len(),
            });
        }
        if let Some(e) = (0..weights.len()).find(|&e| weights[e].is_negative()) {
            return Err(Error::InvalidWeights(format!("weight of edge {e} is negative")));
        }
        Ok(WeightedSteinerGraph { sg, weights })
    }

    pub fn from_ints(sg: SteinerGraph, weights: &[i64]) -> Result<Self> {
        WeightedSteinerGraph::new(sg, EdgeVector::from_ints(weights))
    }

    /// All weights equal to one.
    pub fn unit(sg: SteinerGraph) -> Self {
        let weights = EdgeVector::ones(sg.edge_count());
        WeightedSteinerGraph { sg, weights }
    }

    pub fn graph(&self) -> &Graph {
        self.sg.graph()
    }
}

/// The edges of `δ(S)`.
pub fn delta(g: &SteinerGraph, s: &CutSet) -> Result<Vec<usize>> {
    s.validate(g.graph())?;
    Ok(g.graph().cut_edges(s.members))
}

/// Whether `δ(S)` is a T-Steiner cut.
pub fn is_steiner_cut(g: &SteinerGraph, s: &CutSet) -> Result<bool> {
    s.validate(g.graph())?;
    Ok(g.separates_terminals(s.members))
}

/// The 0/1 incidence vector of `δ(S)`.
pub fn incidence_vector(g: &SteinerGraph, s: &CutSet) -> Result<EdgeVector> {
    s.validate(g.graph())?;
    let graph = g.graph();
    Ok(EdgeVector(
        (0..graph.edge_count())
            .map(|e| {
                if graph.crosses(s.members, e) {
                    rational::one()
                } else {
                    rational::zero()
                }
            })
            .collect(),
    ))
}

/// Connected components after deleting `removed_nodes` and `removed_edges`,
/// ordered by their smallest node.
pub fn connected_components(g: &Graph, removed_nodes: NodeSet, removed_edges: &[usize]) -> Vec<NodeSet> {
    let mut removed = vec![false; g.edge_count()];
    for &e in removed_edges {
        if e < removed.len() {
            removed[e] = true;
        }
    }
    let alive = g.all_nodes().difference(removed_nodes);
    let mut left = alive;
    let mut components = Vec::new();
    while let Some(v) = left.first() {
        let component = g.reach(v, alive, &removed);
        left = left.difference(component);
        components.push(component);
    }
    components
}

/// Biconnected components of the graph on `n` nodes with the given edge list,
/// each returned as a list of positions into `edges`. Isolated nodes belong to
/// no block.
pub(crate) fn biconnected_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push((v, i));
        incident[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX || incident[root].is_empty() {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (node, parent edge, next incidence position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent_edge, ref mut pos)) = stack.last_mut() {
            if *pos < incident[u].len() {
                let (w, e) = incident[u][*pos];
                *pos += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[u] {
                    edge_stack.push(e);
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}
