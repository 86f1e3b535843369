//! Steiner cut enumeration, minimum Steiner cuts and roots.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{CutSet, EdgeVector, Graph, NodeSet, SteinerGraph, WeightedSteinerGraph};
use crate::rational::Rational;

/// Largest node count accepted by the exhaustive cut enumeration.
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Enumerate,
    MaxFlow,
}

/// The roots of a weight vector together with its minimum Steiner cut value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootList {
    pub roots: Vec<CutSet>,
    pub gamma: Rational,
}

fn check_enumerable(g: &SteinerGraph) -> Result<()> {
    if g.node_count() > ENUMERATION_LIMIT {
        return Err(Error::too_large("node count", ENUMERATION_LIMIT, g.node_count()));
    }
    Ok(())
}

/// Canonical sides of all Steiner cuts, in increasing bit order.
pub(crate) fn steiner_sides(g: &SteinerGraph) -> Vec<NodeSet> {
    let n = g.node_count();
    let t_star = g.reference_terminal();
    let others: Vec<usize> = (0..n).filter(|&v| v != t_star).collect();
    let terminals = g.terminals();
    let mut sides = Vec::new();
    for mask in 1u64..(1u64 << others.len()) {
        let s: NodeSet = others
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if s.meets(terminals) {
            sides.push(s);
        }
    }
    sides.sort_unstable();
    sides
}

/// Canonical sides of the Steiner cuts whose both shores are connected.
pub(crate) fn steiner_bond_sides(g: &SteinerGraph) -> Vec<NodeSet> {
    let graph = g.graph();
    let n = g.node_count();
    steiner_sides(g)
        .into_iter()
        .filter(|&s| graph.induces_connected(s) && graph.induces_connected(s.complement(n)))
        .collect()
}

/// One canonical representative per Steiner cut; the reference terminal lies
/// outside every returned set.
pub fn enumerate_steiner_cuts(g: &SteinerGraph) -> Result<Vec<CutSet>> {
    check_enumerable(g)?;
    Ok(steiner_sides(g).into_iter().map(CutSet::new).collect())
}

/// Edge weights scaled to a common denominator, so cut weights can be
/// compared as machine integers.
pub(crate) enum ScaledWeights {
    Int { weights: Vec<i64>, denominator: BigInt },
    Exact,
}

impl ScaledWeights {
    pub fn new(weights: &EdgeVector) -> Self {
        let denominator = weights
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Option<Vec<i64>> = weights
            .iter()
            .map(|x| (x * Rational::from_integer(denominator.clone())).to_integer().to_i64())
            .collect();
        match scaled {
            Some(w) if w.iter().try_fold(0i64, |acc, &x| acc.checked_add(x)).is_some() => ScaledWeights::Int {
                weights: w,
                denominator,
            },
            _ => ScaledWeights::Exact,
        }
    }
}

/// Minimum weight over `sides` and the sides attaining it.
pub(crate) fn minimum_over(graph: &Graph, weights: &EdgeVector, sides: &[NodeSet]) -> (Rational, Vec<NodeSet>) {
    let edges = graph.edges();
    match ScaledWeights::new(weights) {
        ScaledWeights::Int { weights, denominator } => {
            let cut = |s: NodeSet| -> i64 {
                edges
                    .iter()
                    .zip(&weights)
                    .filter(|(&(u, v), _)| s.contains(u) != s.contains(v))
                    .map(|(_, &w)| w)
                    .sum()
            };
            let values: Vec<i64> = sides.par_iter().map(|&s| cut(s)).collect();
            let Some(&best) = values.iter().min() else {
                return (Rational::zero(), Vec::new());
            };
            let attained = sides
                .iter()
                .zip(&values)
                .filter(|(_, &v)| v == best)
                .map(|(&s, _)| s)
                .collect();
            (Rational::new(best.into(), denominator), attained)
        }
        ScaledWeights::Exact => {
            let values: Vec<Rational> = sides
                .par_iter()
                .map(|&s| weights.cut_weight(graph, s))
                .collect();
            let Some(best) = values.iter().min().cloned() else {
                return (Rational::zero(), Vec::new());
            };
            let attained = sides
                .iter()
                .zip(&values)
                .filter(|(_, v)| **v == best)
                .map(|(&s, _)| s)
                .collect();
            (best, attained)
        }
    }
}

/// The minimum weight of a Steiner cut.
pub fn gamma(wg: &WeightedSteinerGraph, method: Method) -> Result<Rational> {
    match method {
        Method::Enumerate => Ok(roots(wg)?.gamma),
        Method::MaxFlow => Ok(min_steiner_cut(wg)?.0),
    }
}

/// All canonical Steiner cuts of minimum weight.
pub fn roots(wg: &WeightedSteinerGraph) -> Result<RootList> {
    check_enumerable(&wg.sg)?;
    let sides = steiner_sides(&wg.sg);
    let (gamma, attained) = minimum_over(wg.graph(), &wg.weights, &sides);
    Ok(RootList {
        roots: attained.into_iter().map(CutSet::new).collect(),
        gamma,
    })
}

/// A minimum Steiner cut by `|T|-1` max-flow computations from the terminal
/// with the smallest name. The witness is canonical.
pub fn min_steiner_cut(wg: &WeightedSteinerGraph) -> Result<(Rational, CutSet)> {
    let g = &wg.sg;
    let graph = g.graph();
    let source = g
        .terminals()
        .iter()
        .min_by(|&a, &b| graph.name(a).cmp(graph.name(b)))
        .expect("at least two terminals");
    let mut sinks: Vec<usize> = g.terminals().without(source).to_vec();
    sinks.sort_by(|&a, &b| graph.name(a).cmp(graph.name(b)));
    let flows = sinks
        .par_iter()
        .map(|&t| max_flow_min_cut(graph, &wg.weights, source, t))
        .collect::<Result<Vec<_>>>()?;
    let (value, side) = flows
        .into_iter()
        .reduce(|best, next| if next.0 < best.0 { next } else { best })
        .expect("at least one sink");
    Ok((value, CutSet::new(g.canonical(side.members))))
}

/// Exact Edmonds–Karp on the undirected graph. The returned cut is the set of
/// nodes reachable from `s` in the final residual graph.
pub fn max_flow_min_cut(g: &Graph, capacities: &EdgeVector, s: usize, t: usize) -> Result<(Rational, CutSet)> {
    let n = g.node_count();
    if capacities.len() != g.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: g.edge_count(),
            actual: capacities.len(),
        });
    }
    if let Some(e) = (0..capacities.len()).find(|&e| capacities[e].is_negative()) {
        return Err(Error::InvalidWeights(format!("capacity of edge {e} is negative")));
    }
    if s >= n {
        return Err(Error::BadIndex(s));
    }
    if t >= n {
        return Err(Error::BadIndex(t));
    }
    if s == t {
        return Err(Error::InvalidCutSet("source equals sink".into()));
    }
    let mut residual = vec![vec![Rational::zero(); n]; n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        residual[u][v] = capacities[e].clone();
        residual[v][u] = capacities[e].clone();
    }
    let mut value = Rational::zero();
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for w in g.neighbors(u).iter() {
                if parent[w] == usize::MAX && residual[u][w].is_positive() {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[t] == usize::MAX {
            let reachable: NodeSet = (0..n).filter(|&v| parent[v] != usize::MAX).collect();
            return Ok((value, CutSet::new(reachable)));
        }
        let mut bottleneck: Option<Rational> = None;
        let mut v = t;
        while v != s {
            let u = parent[v];
            if bottleneck.as_ref().is_none_or(|b| residual[u][v] < *b) {
                bottleneck = Some(residual[u][v].clone());
            }
            v = u;
        }
        let bottleneck = bottleneck.expect("path has an edge");
        let mut v = t;
        while v != s {
            let u = parent[v];
            residual[u][v] -= &bottleneck;
            residual[v][u] += &bottleneck;
            v = u;
        }
        value += bottleneck;
    }
}
