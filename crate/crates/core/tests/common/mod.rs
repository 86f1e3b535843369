#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;

use steinercut::graph::{Graph, NodeSet, SteinerGraph, WeightedSteinerGraph};
use steinercut::oracle::{oracle_facets_with, OracleLimits};
use steinercut::search::{canonical_code, CanonicalCode};
use steinercut::transforms::restrict_to_support;
use steinercut::EdgeVector;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn graph_code(g: &Graph) -> CanonicalCode {
    let sg = SteinerGraph::all_terminal(g.clone()).expect("connected graph on two or more nodes");
    canonical_code(&sg).expect("small graph")
}

/// Connected graphs with at least one edge, at most `max_edges` edges and at
/// most `max_nodes` nodes, one per isomorphism class.
pub fn connected_graphs(max_edges: usize, max_nodes: usize) -> Vec<Graph> {
    let mut level = vec![Graph::numbered(2, &[(0, 1)]).unwrap()];
    let mut all = level.clone();
    for _ in 1..max_edges {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.node_count();
            let mut grown = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if g.edge_between(u, v).is_none() {
                        let mut edges = g.edges().to_vec();
                        edges.push((u, v));
                        grown.push(Graph::numbered(n, &edges).unwrap());
                    }
                }
                if n < max_nodes {
                    let mut edges = g.edges().to_vec();
                    edges.push((u, n));
                    grown.push(Graph::numbered(n + 1, &edges).unwrap());
                }
            }
            for h in grown {
                if seen.insert(graph_code(&h)) {
                    next.push(h);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

/// Every terminal set of the given sizes on each graph, one Steiner graph per
/// isomorphism class.
pub fn steiner_instances(graphs: &[Graph], sizes: std::ops::RangeInclusive<usize>) -> Vec<SteinerGraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        let n = g.node_count();
        for bits in 0u64..1 << n {
            let t = NodeSet::from_bits(bits);
            if !sizes.contains(&t.len()) {
                continue;
            }
            let sg = SteinerGraph::new(g.clone(), t).unwrap();
            if seen.insert(canonical_code(&sg).unwrap()) {
                out.push(sg);
            }
        }
    }
    out
}

/// A connected random graph: a random spanning tree plus random extra edges.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Graph {
    let mut edges = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.push((a.min(b), a.max(b)));
    }
    let mut missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|p| !edges.contains(p))
        .collect();
    missing.shuffle(rng);
    let extra = m.saturating_sub(n - 1).min(missing.len());
    edges.extend(missing.into_iter().take(extra));
    edges.sort_unstable();
    Graph::numbered(n, &edges).unwrap()
}

pub fn random_terminals(rng: &mut ChaCha8Rng, n: usize, count: usize) -> NodeSet {
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(rng);
    nodes.into_iter().take(count.max(2)).collect()
}

pub fn random_weights(rng: &mut ChaCha8Rng, m: usize) -> EdgeVector {
    let w: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=6)).collect();
    EdgeVector::from_ints(&w)
}

/// Facet-inducing weighted Steiner graphs: oracle facets of random instances
/// restricted to their supports. Node names are made distinct by `prefix`.
pub fn facet_seeds(seed: u64, count: usize) -> Vec<WeightedSteinerGraph> {
    let mut r = rng(seed);
    let instances: Vec<SteinerGraph> = (0..count)
        .map(|_| {
            let n = r.gen_range(3..=6);
            let m = r.gen_range(n - 1..=(n * (n - 1) / 2).min(9));
            let g = random_connected(&mut r, n, m);
            let k = r.gen_range(2..=n);
            let t = random_terminals(&mut r, n, k);
            SteinerGraph::new(g, t).unwrap()
        })
        .collect();
    let picks: Vec<u64> = (0..count).map(|_| r.gen()).collect();
    instances
        .par_iter()
        .zip(picks)
        .map(|(sg, pick)| {
            let facets = oracle_facets_with(sg, &OracleLimits::default()).unwrap();
            let ineq = &facets.nontrivial[pick as usize % facets.len()];
            let wg = WeightedSteinerGraph::new(sg.clone(), ineq.coeffs.clone()).unwrap();
            restrict_to_support(&wg).unwrap()
        })
        .collect()
}

/// Renames every node `x` to `prefix x`.
pub fn prefixed(wg: &WeightedSteinerGraph, prefix: &str) -> WeightedSteinerGraph {
    let g = wg.graph();
    let names = g.names().iter().map(|s| format!("{prefix}{s}")).collect();
    let graph = Graph::from_indices(names, g.edges().to_vec()).unwrap();
    WeightedSteinerGraph::new(SteinerGraph::new(graph, wg.sg.terminals()).unwrap(), wg.weights.clone()).unwrap()
}

/// Simple paths from `s` to `t`, as sorted edge index lists.
pub fn simple_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, v: usize, t: usize, visited: NodeSet, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == t {
            let mut p = path.clone();
            p.sort_unstable();
            out.push(p);
            return;
        }
        for e in g.star(v) {
            let (a, b) = g.edge(e);
            let u = if a == v { b } else { a };
            if !visited.contains(u) {
                path.push(e);
                walk(g, u, t, visited.with(u), path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, s, t, NodeSet::singleton(s), &mut Vec::new(), &mut out);
    out
}

/// 0/1 vector on `edges`.
pub fn indicator(m: usize, edges: &[usize]) -> EdgeVector {
    let mut v = vec![0; m];
    for &e in edges {
        v[e] = 1;
    }
    EdgeVector::from_ints(&v)
}

pub fn histogram<K: Ord>(keys: impl IntoIterator<Item = K>) -> BTreeMap<K, usize> {
    let mut h = BTreeMap::new();
    for k in keys {
        *h.entry(k).or_insert(0) += 1;
    }
    h
}
