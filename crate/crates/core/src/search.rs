//! Enumeration of irreducible facet inducing Steiner graphs with a given
//! number of terminals, up to isomorphisms that map terminals to terminals.
//!
//! Candidates are 2-connected graphs with terminals of degree at least two,
//! nonterminals of degree at least three, `|E| ≤ |V| + τ − 3` and
//! `|V| ≤ 3τ − 6`. Their dense facets come from the oracle.

use std::collections::BTreeSet;

use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EdgeVector, Graph, NodeSet, SteinerGraph, WeightedSteinerGraph};
use crate::oracle::{oracle_facets_with, OracleLimits};
use crate::rational::{self, Rational};

/// Largest node count for canonical forms and the search.
pub const SEARCH_NODE_LIMIT: usize = 12;

/// An irreducible Steiner graph in canonical form with all its dense facet
/// weights and their right-hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub graph: SteinerGraph,
    pub facet_weights: Vec<(EdgeVector, Rational)>,
}

/// Isomorphism-invariant code of a Steiner graph; two Steiner graphs with
/// the same node, terminal and edge counts are isomorphic iff their codes agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub nodes: usize,
    pub terminals: usize,
    pub edges: usize,
    pub adjacency: u128,
}

fn check_size(n: usize) -> Result<()> {
    if n > SEARCH_NODE_LIMIT {
        return Err(Error::too_large("node count", SEARCH_NODE_LIMIT, n));
    }
    Ok(())
}

/// Stable color refinement seeded with (terminal first, degree).
fn refine(adj: &[u16], terminals: NodeSet) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = {
        let keys: Vec<(bool, u32)> = (0..n)
            .map(|v| (!terminals.contains(v), adj[v].count_ones()))
            .collect();
        rank(&keys)
    };
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| colors[u]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let next = rank(&keys);
        let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let sorted: Vec<K> = keys.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

struct Labeler<'a> {
    adj: &'a [u16],
    cells: Vec<usize>,
    colors: Vec<usize>,
    total_bits: u32,
    best: Option<(u128, Vec<usize>)>,
}

impl Labeler<'_> {
    fn search(&mut self, order: &mut Vec<usize>, used: u16, code: u128) {
        let p = order.len();
        if p == self.adj.len() {
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, order.clone()));
            }
            return;
        }
        let bits_after = ((p + 1) * p / 2) as u32;
        for v in 0..self.adj.len() {
            if used >> v & 1 == 1 || self.colors[v] != self.cells[p] {
                continue;
            }
            let mut next = code;
            for &u in order.iter() {
                next = next << 1 | (self.adj[v] >> u & 1) as u128;
            }
            if let Some((b, _)) = &self.best {
                if next < b >> (self.total_bits - bits_after) {
                    continue;
                }
            }
            order.push(v);
            self.search(order, used | 1 << v, next);
            order.pop();
        }
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u16> {
    let mut adj = vec![0u16; g.node_count()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// The canonical code and the node at each canonical position.
fn canonical_labeling(adj: &[u16], terminals: NodeSet) -> (u128, Vec<usize>) {
    let n = adj.len();
    let colors = refine(adj, terminals);
    let mut cells = colors.clone();
    cells.sort_unstable();
    let mut labeler = Labeler {
        adj,
        cells,
        colors,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        best: None,
    };
    labeler.search(&mut Vec::with_capacity(n), 0, 0);
    labeler.best.expect("at least one labeling")
}

pub fn canonical_code(g: &SteinerGraph) -> Result<CanonicalCode> {
    check_size(g.node_count())?;
    let (adjacency, _) = canonical_labeling(&adjacency_masks(g.graph()), g.terminals());
    Ok(CanonicalCode {
        nodes: g.node_count(),
        terminals: g.terminals().len(),
        edges: g.edge_count(),
        adjacency,
    })
}

/// Whether some graph isomorphism maps the terminals of `g1` onto those of `g2`.
pub fn steiner_isomorphic(g1: &SteinerGraph, g2: &SteinerGraph) -> Result<bool> {
    Ok(canonical_code(g1)? == canonical_code(g2)?)
}

/// The Steiner graph with the given code: terminals `t1..` first, then
/// nonterminals `v1..`, edges in lexicographic order of positions.
pub fn from_code(code: &CanonicalCode) -> Result<SteinerGraph> {
    let n = code.nodes;
    let names: Vec<String> = (0..n)
        .map(|p| {
            if p < code.terminals {
                format!("t{}", p + 1)
            } else {
                format!("v{}", p + 1 - code.terminals)
            }
        })
        .collect();
    let total = n * n.saturating_sub(1) / 2;
    let mut bit = total;
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code.adjacency >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    SteinerGraph::new(Graph::from_indices(names, edges)?, NodeSet::full(code.terminals))
}

/// Relabels `g` into canonical form.
pub fn canonical_form(g: &SteinerGraph) -> Result<SteinerGraph> {
    from_code(&canonical_code(g)?)
}

/// Relabels a weighted Steiner graph into canonical form, carrying the
/// weights along. Catalogue entries list every dense facet of their graph,
/// so a facet weight of an isomorphic graph appears there after this map.
pub fn to_canonical(wg: &WeightedSteinerGraph) -> Result<WeightedSteinerGraph> {
    let code = canonical_code(&wg.sg)?;
    let (_, order) = canonical_labeling(&adjacency_masks(wg.graph()), wg.sg.terminals());
    let mut position = vec![0; order.len()];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let graph = from_code(&code)?;
    let mut weights = vec![rational::zero(); wg.weights.len()];
    for (e, &(u, v)) in wg.graph().edges().iter().enumerate() {
        let (a, b) = (position[u], position[v]);
        let target = graph
            .graph()
            .edge_between(a, b)
            .ok_or_else(|| Error::Internal("canonical relabeling lost an edge".into()))?;
        weights[target] = wg.weights[e].clone();
    }
    WeightedSteinerGraph::new(graph, EdgeVector::new(weights))
}

/// Labeled candidate graphs on `n` nodes, nodes `0..tau` being the terminals,
/// as edge masks over the pairs in lexicographic order.
struct Generator {
    n: usize,
    pairs: Vec<(usize, usize)>,
    lo: Vec<usize>,
    hi: Vec<usize>,
    max_edges: usize,
    degree: Vec<usize>,
    found: Vec<u128>,
}

impl Generator {
    fn new(n: usize, tau: usize, max_edges: usize) -> Option<Self> {
        let lo: Vec<usize> = (0..n).map(|v| if v < tau { 2 } else { 3 }).collect();
        let need: usize = lo.iter().sum();
        if need > 2 * max_edges {
            return None;
        }
        let slack = 2 * max_edges - need;
        let hi = lo.iter().map(|&d| (d + slack).min(n - 1)).collect();
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Some(Generator {
            n,
            pairs,
            lo,
            hi,
            max_edges,
            degree: vec![0; n],
            found: Vec::new(),
        })
    }

    fn feasible_row_start(&self, i: usize) -> bool {
        (i..self.n).all(|v| self.degree[v] + (v - i) + (self.n - 1 - v) >= self.lo[v])
    }

    fn run(&mut self, k: usize, mask: u128, edges: usize) {
        let deficit: usize = (0..self.n).map(|v| self.lo[v].saturating_sub(self.degree[v])).sum();
        if deficit > 2 * (self.max_edges - edges) {
            return;
        }
        if k == self.pairs.len() {
            if (0..self.n).all(|v| self.degree[v] >= self.lo[v]) {
                self.found.push(mask);
            }
            return;
        }
        let (i, j) = self.pairs[k];
        if j == i + 1 && !self.feasible_row_start(i) {
            return;
        }
        let row_done = j == self.n - 1;
        if edges < self.max_edges && self.degree[i] < self.hi[i] && self.degree[j] < self.hi[j] {
            self.degree[i] += 1;
            self.degree[j] += 1;
            if !row_done || self.degree[i] >= self.lo[i] {
                self.run(k + 1, mask | 1 << k, edges + 1);
            }
            self.degree[i] -= 1;
            self.degree[j] -= 1;
        }
        if !row_done || self.degree[i] >= self.lo[i] {
            self.run(k + 1, mask, edges);
        }
    }
}

fn mask_graph(n: usize, pairs: &[(usize, usize)], mask: u128) -> Graph {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|&(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::numbered(n, &edges).expect("generated graph")
}

fn two_connected(g: &Graph) -> bool {
    g.is_connected() && g.cut_nodes().is_empty()
}

/// Canonical codes of all candidate irreducible Steiner graphs with `tau`
/// terminals and exactly `n` nodes.
pub fn candidate_codes(tau: usize, n: usize) -> Result<Vec<CanonicalCode>> {
    check_size(n)?;
    if n < tau || n < 3 {
        return Ok(Vec::new());
    }
    let max_edges = n + tau - 3;
    let Some(mut generator) = Generator::new(n, tau, max_edges) else {
        return Ok(Vec::new());
    };
    generator.run(0, 0, 0);
    let pairs = generator.pairs.clone();
    let terminals = NodeSet::full(tau);
    let codes: BTreeSet<CanonicalCode> = generator
        .found
        .par_iter()
        .filter_map(|&mask| {
            let g = mask_graph(n, &pairs, mask);
            if !two_connected(&g) {
                return None;
            }
            let (adjacency, _) = canonical_labeling(&adjacency_masks(&g), terminals);
            Some(CanonicalCode {
                nodes: n,
                terminals: tau,
                edges: g.edge_count(),
                adjacency,
            })
        })
        .collect();
    Ok(codes.into_iter().collect())
}

/// Oracle guards used for search candidates.
pub fn search_limits(max_nodes: usize) -> OracleLimits {
    OracleLimits {
        max_edges: 2 * SEARCH_NODE_LIMIT,
        max_cuts: 1 << max_nodes.saturating_sub(1),
    }
}

fn dense_facets(g: &SteinerGraph, limits: &OracleLimits) -> Result<Vec<(EdgeVector, Rational)>> {
    Ok(oracle_facets_with(g, limits)?
        .nontrivial
        .into_iter()
        .filter(|i| i.coeffs.iter().all(|x| x.is_positive()))
        .map(|i| (i.coeffs, i.rhs))
        .collect())
}

/// All irreducible facet inducing Steiner graphs with `tau` terminals and at
/// most `max_nodes` nodes, with their dense facet weights, sorted by node
/// count, edge count and canonical code.
pub fn search_irreducible(tau: usize, max_nodes: usize) -> Result<Vec<CatalogueEntry>> {
    if tau < 2 {
        return Err(Error::InvalidGraph(format!("need at least two terminals, got {tau}")));
    }
    if tau == 2 {
        let sg = SteinerGraph::from_names(&["t1", "t2"], &[("t1", "t2")], &["t1", "t2"])?;
        return Ok(vec![CatalogueEntry {
            graph: sg,
            facet_weights: vec![(EdgeVector::ones(1), rational::one())],
        }]);
    }
    let limit = (3 * tau - 6).min(SEARCH_NODE_LIMIT);
    if max_nodes > limit {
        return Err(Error::too_large("max nodes", limit, max_nodes));
    }
    let mut codes = Vec::new();
    for n in tau..=max_nodes {
        codes.extend(candidate_codes(tau, n)?);
    }
    let limits = search_limits(max_nodes);
    let mut entries: Vec<(CanonicalCode, CatalogueEntry)> = codes
        .par_iter()
        .map(|code| -> Result<Option<(CanonicalCode, CatalogueEntry)>> {
            let graph = from_code(code)?;
            let facet_weights = dense_facets(&graph, &limits)?;
            Ok((!facet_weights.is_empty()).then_some((*code, CatalogueEntry { graph, facet_weights })))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    entries.sort_by_key(|e| e.0);
    Ok(entries.into_iter().map(|(_, e)| e).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::rational::int;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c4(terminals: &[usize]) -> SteinerGraph {
        SteinerGraph::new(cycle(4), terminals.iter().copied().collect()).unwrap()
    }

    #[test]
    fn isomorphism_examples() {
        assert!(steiner_isomorphic(&c4(&[0, 2]), &c4(&[1, 3])).unwrap());
        assert!(!steiner_isomorphic(&c4(&[0, 1]), &c4(&[0, 2])).unwrap());
        let k5 = SteinerGraph::new(complete(5), [0, 3].into_iter().collect()).unwrap();
        assert!(steiner_isomorphic(&k5, &k5).unwrap());
        let big = SteinerGraph::all_terminal(cycle(13)).unwrap();
        assert!(steiner_isomorphic(&big, &big).unwrap_err().is_guard());
    }

    #[test]
    fn canonical_form_round_trip() {
        let g = SteinerGraph::new(complete(4), [1, 2].into_iter().collect()).unwrap();
        let c = canonical_form(&g).unwrap();
        assert!(steiner_isomorphic(&g, &c).unwrap());
        assert_eq!(canonical_form(&c).unwrap(), c);
        assert_eq!(c.graph().names_of(c.terminals()), ["t1", "t2"]);
    }

    fn relabel(g: &SteinerGraph, perm: &[usize]) -> SteinerGraph {
        let edges: Vec<_> = g.graph().edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let terminals = g.terminals().iter().map(|v| perm[v]).collect();
        SteinerGraph::new(Graph::numbered(g.node_count(), &edges).unwrap(), terminals).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn codes_are_invariant(seed in any::<u64>(), n in 3usize..=8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            pairs.shuffle(&mut rng);
            let path: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
            let mut edges = path.clone();
            edges.extend(pairs.into_iter().filter(|e| !path.contains(e)).take(n));
            let g = Graph::numbered(n, &edges).unwrap();
            let t: NodeSet = [0, n - 1, n / 2].into_iter().collect();
            let sg = SteinerGraph::new(g, t).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let other = relabel(&sg, &perm);
            prop_assert_eq!(canonical_code(&sg).unwrap(), canonical_code(&other).unwrap());
        }
    }

    #[test]
    fn candidates_for_three_terminals() {
        let codes = candidate_codes(3, 3).unwrap();
        assert_eq!(codes.len(), 1);
        assert_eq!(from_code(&codes[0]).unwrap().edge_count(), 3);
    }

    #[test]
    fn candidate_counts_match_brute_force() {
        // all graphs on n labeled nodes, filtered by the same conditions
        for (tau, n) in [(4, 4), (4, 5), (4, 6), (5, 6)] {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let mut codes = BTreeSet::new();
            for mask in 0u128..(1 << pairs.len()) {
                let m = mask.count_ones() as usize;
                if m > n + tau - 3 {
                    continue;
                }
                let g = mask_graph(n, &pairs, mask);
                let degrees_ok = (0..n).all(|v| g.degree(v) >= if v < tau { 2 } else { 3 });
                if degrees_ok && two_connected(&g) {
                    let sg = SteinerGraph::new(g, NodeSet::full(tau)).unwrap();
                    codes.insert(canonical_code(&sg).unwrap());
                }
            }
            assert_eq!(candidate_codes(tau, n).unwrap(), codes.into_iter().collect::<Vec<_>>(), "tau={tau} n={n}");
        }
    }

    #[test]
    fn small_catalogues() {
        let two = search_irreducible(2, 2).unwrap();
        assert_eq!(two.len(), 1);
        let three = search_irreducible(3, 3).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].facet_weights, vec![(EdgeVector::ones(3), int(2))]);
        let four = search_irreducible(4, 6).unwrap();
        assert_eq!(four.len(), 1);
        assert!(steiner_isomorphic(&four[0].graph, &SteinerGraph::all_terminal(cycle(4)).unwrap()).unwrap());
        assert_eq!(four[0].facet_weights, vec![(EdgeVector::ones(4), int(2))]);
        assert!(search_irreducible(4, 7).unwrap_err().is_guard());
    }
}
