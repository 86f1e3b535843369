//! Ground-truth facets of Steiner cut dominants by vertex enumeration of the
//! blocking polyhedron `{c ≥ 0 : c·χ(δ(S)) ≥ 1 for all Steiner cuts δ(S)}`,
//! plus a brute-force test for prism and pyramid minors.
//!
//! Only Steiner cuts with both shores connected are used as rows: every other
//! Steiner cut contains one of those, so its row is redundant.

use std::collections::{BTreeSet, HashSet};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cuts::{self, steiner_bond_sides, steiner_sides};
use crate::error::{Error, Result};
use crate::exactla::{self, gcd_i128, RationalMatrix, Solution};
use crate::facets::{canonical_list, Inequality, Kind};
use crate::graph::{CutSet, EdgeVector, Graph, SteinerGraph};
use crate::rational::{self, Rational};

/// Hard guards for [`oracle_facets_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_edges: usize,
    /// Bound on the number of Steiner cuts of the instance.
    pub max_cuts: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_edges: 10,
            max_cuts: 64,
        }
    }
}

impl OracleLimits {
    /// Limits large enough for the irreducible searches and the acceptance corpora.
    pub fn extended() -> Self {
        OracleLimits {
            max_edges: 12,
            max_cuts: 200,
        }
    }

    /// Componentwise minimum, for lowering guards from the command line.
    pub fn capped(self, cap: usize) -> Self {
        OracleLimits {
            max_edges: self.max_edges.min(cap),
            max_cuts: self.max_cuts.min(cap),
        }
    }
}

/// The non-trivial facets of a Steiner cut dominant, in minimum integer form
/// with right-hand side `γ_c`. Nonnegativity facets are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetList {
    pub nontrivial: Vec<Inequality>,
}

impl FacetList {
    pub fn len(&self) -> usize {
        self.nontrivial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nontrivial.is_empty()
    }

    /// Facets whose support is every edge.
    pub fn dense(&self) -> Vec<&Inequality> {
        self.nontrivial
            .iter()
            .filter(|i| i.coeffs.iter().all(|x| x.is_positive()))
            .collect()
    }
}

fn check_limits(g: &SteinerGraph, limits: &OracleLimits) -> Result<()> {
    if g.edge_count() > limits.max_edges {
        return Err(Error::too_large("edge count", limits.max_edges, g.edge_count()));
    }
    if g.node_count() > cuts::ENUMERATION_LIMIT {
        return Err(Error::too_large("node count", cuts::ENUMERATION_LIMIT, g.node_count()));
    }
    let count = steiner_sides(g).len();
    if count > limits.max_cuts {
        return Err(Error::too_large("Steiner cut count", limits.max_cuts, count));
    }
    Ok(())
}

fn bond_rows(g: &SteinerGraph) -> Vec<Vec<i64>> {
    let graph = g.graph();
    steiner_bond_sides(g)
        .into_iter()
        .map(|s| (0..graph.edge_count()).map(|e| graph.crosses(s, e) as i64).collect())
        .collect()
}

/// Turns an integral blocker vertex into a normalized inequality.
fn inequality_from_vertex(coords: &[i128], rows: &[Vec<i64>]) -> Inequality {
    let g = coords.iter().fold(0, |acc, &x| gcd_i128(acc, x));
    let ints: Vec<i128> = coords.iter().map(|&x| x / g).collect();
    let rhs = rows
        .iter()
        .map(|r| r.iter().zip(&ints).map(|(&a, &c)| a as i128 * c).sum::<i128>())
        .min()
        .expect("at least one Steiner cut");
    Inequality::new(
        EdgeVector::new(ints.iter().map(|&x| Rational::from_integer(x.into())).collect()),
        Rational::from_integer(rhs.into()),
        Kind::Oracle,
    )
}

/// Facets of `cut₊(G,T)` under the default guards.
pub fn oracle_facets(g: &SteinerGraph) -> Result<FacetList> {
    oracle_facets_with(g, &OracleLimits::default())
}

pub fn oracle_facets_with(g: &SteinerGraph, limits: &OracleLimits) -> Result<FacetList> {
    check_limits(g, limits)?;
    let m = g.edge_count();
    let rows = bond_rows(g);
    // homogenized cone over (c, λ): c ≥ 0, λ ≥ 0, a·c − λ ≥ 0
    let cone_rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().copied().chain(std::iter::once(-1)).collect())
        .collect();
    let rays = extreme_rays(m + 1, &cone_rows)?;
    let nontrivial = rays
        .iter()
        .filter(|r| r[m] > 0)
        .map(|r| inequality_from_vertex(&r[..m], &rows))
        .collect();
    Ok(FacetList {
        nontrivial: canonical_list(nontrivial),
    })
}

const WORDS: usize = 8;
const MAX_CONSTRAINTS: usize = 64 * WORDS;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Bits([u64; WORDS]);

impl Bits {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(self, other: Bits) -> Bits {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        out
    }

    fn is_subset(self, other: Bits) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a & !b == 0)
    }

    fn count(self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    coords: Vec<i128>,
    zeros: Bits,
}

fn overflow() -> Error {
    Error::Internal("integer overflow in vertex enumeration".into())
}

fn dot(row: &[i64], x: &[i128]) -> Result<i128> {
    row.iter().zip(x).try_fold(0i128, |acc, (&a, &b)| {
        (a as i128).checked_mul(b).and_then(|p| acc.checked_add(p)).ok_or_else(overflow)
    })
}

fn normalize(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0, |acc, &x| gcd_i128(acc, x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Extreme rays of `{x ∈ R^dim : x ≥ 0, row·x ≥ 0 for every row}` by the
/// double description method with the combinatorial adjacency test.
fn extreme_rays(dim: usize, rows: &[Vec<i64>]) -> Result<Vec<Vec<i128>>> {
    if dim + rows.len() > MAX_CONSTRAINTS {
        return Err(Error::too_large("constraint count", MAX_CONSTRAINTS, dim + rows.len()));
    }
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let mut zeros = Bits([0; WORDS]);
            (0..dim).filter(|&i| i != j).for_each(|i| zeros.set(i));
            let mut coords = vec![0; dim];
            coords[j] = 1;
            Ray { coords, zeros }
        })
        .collect();
    for (k, row) in rows.iter().enumerate() {
        let index = dim + k;
        let values: Vec<i128> = rays.iter().map(|r| dot(row, &r.coords)).collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < 0).collect();
        if neg.is_empty() {
            for (r, &v) in rays.iter_mut().zip(&values) {
                if v == 0 {
                    r.zeros.set(index);
                }
            }
            continue;
        }
        let rays_ref = &rays;
        let values_ref = &values;
        let created: Vec<Ray> = pos
            .par_iter()
            .map(|&p| -> Result<Vec<Ray>> {
                let mut out = Vec::new();
                for &n in &neg {
                    let common = rays_ref[p].zeros.and(rays_ref[n].zeros);
                    if common.count() + 2 < dim {
                        continue;
                    }
                    let blocked = rays_ref
                        .iter()
                        .enumerate()
                        .any(|(i, r)| i != p && i != n && common.is_subset(r.zeros));
                    if blocked {
                        continue;
                    }
                    let (a, b) = (values_ref[p], -values_ref[n]);
                    let coords = rays_ref[n]
                        .coords
                        .iter()
                        .zip(&rays_ref[p].coords)
                        .map(|(&x, &y)| {
                            a.checked_mul(x)
                                .and_then(|s| b.checked_mul(y).and_then(|t| s.checked_add(t)))
                                .ok_or_else(overflow)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let mut zeros = common;
                    zeros.set(index);
                    out.push(Ray {
                        coords: normalize(coords),
                        zeros,
                    });
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v > 0 {
                next.push(r);
            } else if v == 0 {
                r.zeros.set(index);
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.coords).collect())
}

/// Reference enumeration: solves every square system of tight constraints
/// (all Steiner cut rows and nonnegativity) and keeps the feasible solutions.
/// Exponential; meant for cross-checking on tiny instances.
pub fn oracle_facets_naive(g: &SteinerGraph, max_systems: usize) -> Result<FacetList> {
    if g.node_count() > cuts::ENUMERATION_LIMIT {
        return Err(Error::too_large("node count", cuts::ENUMERATION_LIMIT, g.node_count()));
    }
    let m = g.edge_count();
    let graph = g.graph();
    let sides = steiner_sides(g);
    let mut constraints: Vec<(Vec<Rational>, Rational)> = sides
        .iter()
        .map(|&s| {
            let row = (0..m).map(|e| rational::int(graph.crosses(s, e) as i64)).collect();
            (row, rational::one())
        })
        .collect();
    for j in 0..m {
        let mut row = vec![rational::zero(); m];
        row[j] = rational::one();
        constraints.push((row, rational::zero()));
    }
    let systems = binomial(constraints.len(), m);
    if systems > max_systems {
        return Err(Error::too_large("tight-system count", max_systems, systems));
    }
    let mut vertices: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut chosen = Vec::with_capacity(m);
    collect_vertices(&constraints, m, 0, &mut chosen, &mut vertices)?;
    let rows: Vec<Vec<i64>> = sides
        .iter()
        .map(|&s| (0..m).map(|e| graph.crosses(s, e) as i64).collect())
        .collect();
    let nontrivial = vertices
        .into_iter()
        .map(|v| {
            let ints = exactla::minimum_integer_form(&EdgeVector::new(v))?;
            let coords: Vec<i128> = ints
                .iter()
                .map(|x| rational::to_i64(x).map(i128::from).ok_or_else(overflow))
                .collect::<Result<_>>()?;
            Ok(inequality_from_vertex(&coords, &rows))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FacetList {
        nontrivial: canonical_list(nontrivial),
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn collect_vertices(
    constraints: &[(Vec<Rational>, Rational)],
    m: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<Rational>>,
) -> Result<()> {
    if chosen.len() == m {
        let rows: Vec<Vec<Rational>> = chosen.iter().map(|&i| constraints[i].0.clone()).collect();
        let rhs: Vec<Rational> = chosen.iter().map(|&i| constraints[i].1.clone()).collect();
        if let Solution::Unique(x) = exactla::solve_square(&RationalMatrix::new(m, rows)?, &rhs)? {
            let feasible = constraints.iter().all(|(row, b)| {
                let lhs: Rational = row.iter().zip(&x).map(|(a, y)| a * y).sum();
                lhs >= *b
            });
            if feasible && x.iter().any(|y| !y.is_zero()) {
                out.insert(x);
            }
        }
        return Ok(());
    }
    for i in start..constraints.len() {
        if constraints.len() - i < m - chosen.len() {
            break;
        }
        chosen.push(i);
        collect_vertices(constraints, m, i + 1, chosen, out)?;
        chosen.pop();
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    ViolatedBy(CutSet),
}

/// Checks `ineq` against every Steiner cut of `g`.
pub fn validate_inequality(g: &SteinerGraph, ineq: &Inequality) -> Result<Validity> {
    if ineq.coeffs.len() != g.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: g.edge_count(),
            actual: ineq.coeffs.len(),
        });
    }
    let cuts = cuts::enumerate_steiner_cuts(g)?;
    Ok(cuts
        .into_iter()
        .find(|c| ineq.lhs_at_cut(g.graph(), c.members) < ineq.rhs)
        .map_or(Validity::Valid, Validity::ViolatedBy))
}

/// Largest node count accepted by [`has_prism_or_pyramid_minor`].
pub const MINOR_NODE_LIMIT: usize = 12;

/// Triangle `v1 v2 v3`, triangle `w1 w2 w3`, matching `vi wi`.
pub fn prism() -> Graph {
    Graph::new(
        &["v1", "v2", "v3", "w1", "w2", "w3"],
        &[
            ("v1", "v2"),
            ("v2", "v3"),
            ("v3", "v1"),
            ("w1", "w2"),
            ("w2", "w3"),
            ("w3", "w1"),
            ("v1", "w1"),
            ("v2", "w2"),
            ("v3", "w3"),
        ],
    )
    .expect("prism")
}

/// Triangle `v1 v2 v3`, paths `vi wi u`.
pub fn pyramid() -> Graph {
    Graph::new(
        &["v1", "v2", "v3", "w1", "w2", "w3", "u"],
        &[
            ("v1", "v2"),
            ("v2", "v3"),
            ("v3", "v1"),
            ("v1", "w1"),
            ("v2", "w2"),
            ("v3", "w3"),
            ("u", "w1"),
            ("u", "w2"),
            ("u", "w3"),
        ],
    )
    .expect("pyramid")
}

/// A graph on original labels: `alive` nodes with adjacency bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
struct MinorState {
    alive: u16,
    adj: Vec<u16>,
}

impl MinorState {
    fn from_graph(g: &Graph) -> Self {
        let mut adj = vec![0u16; g.node_count()];
        for &(u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        MinorState {
            alive: ((1u32 << g.node_count()) - 1) as u16,
            adj,
        }
    }

    fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(move |&v| self.alive >> v & 1 == 1)
    }

    fn node_count(&self) -> usize {
        self.alive.count_ones() as usize
    }

    fn edge_count(&self) -> usize {
        self.nodes().map(|v| self.adj[v].count_ones() as usize).sum::<usize>() / 2
    }

    fn delete(&self, v: usize) -> Self {
        let mut next = self.clone();
        next.alive &= !(1 << v);
        for u in 0..next.adj.len() {
            next.adj[u] &= !(1 << v);
        }
        next.adj[v] = 0;
        next
    }

    /// Merges `v` into `u`.
    fn contract(&self, u: usize, v: usize) -> Self {
        let merged = (self.adj[u] | self.adj[v]) & !(1 << u) & !(1 << v);
        let mut next = self.delete(v);
        next.adj[u] = merged;
        for w in 0..next.adj.len() {
            if merged >> w & 1 == 1 {
                next.adj[w] |= 1 << u;
            }
        }
        next
    }

    /// Repeatedly deletes nodes of degree at most one.
    fn pruned(mut self) -> Self {
        loop {
            let low = self.nodes().find(|&v| self.adj[v].count_ones() <= 1);
            match low {
                Some(v) => self = self.delete(v),
                None => return self,
            }
        }
    }
}

/// Whether the state (with exactly `|V(H)|` nodes) has `H` as a spanning subgraph.
fn contains_spanning(state: &MinorState, h: &Graph) -> bool {
    let nodes: Vec<usize> = state.nodes().collect();
    let k = h.node_count();
    if nodes.len() != k {
        return false;
    }
    let mut assignment = vec![usize::MAX; k];
    let mut used = vec![false; k];
    fn place(state: &MinorState, h: &Graph, nodes: &[usize], a: &mut [usize], used: &mut [bool], i: usize) -> bool {
        if i == a.len() {
            return true;
        }
        for j in 0..nodes.len() {
            if used[j] || (state.adj[nodes[j]].count_ones() as usize) < h.degree(i) {
                continue;
            }
            let fits = (0..i).all(|p| h.edge_between(p, i).is_none() || state.adj[nodes[j]] >> a[p] & 1 == 1);
            if fits {
                used[j] = true;
                a[i] = nodes[j];
                if place(state, h, nodes, a, used, i + 1) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    place(state, h, &nodes, &mut assignment, &mut used, 0)
}

fn has_minor_from(state: MinorState, h: &Graph, failed: &mut HashSet<MinorState>) -> bool {
    let state = state.pruned();
    if state.node_count() < h.node_count() || state.edge_count() < h.edge_count() {
        return false;
    }
    if state.node_count() == h.node_count() {
        return contains_spanning(&state, h);
    }
    if failed.contains(&state) {
        return false;
    }
    let nodes: Vec<usize> = state.nodes().collect();
    for &v in &nodes {
        if has_minor_from(state.delete(v), h, failed) {
            return true;
        }
    }
    for &u in &nodes {
        for &v in &nodes {
            if u < v && state.adj[u] >> v & 1 == 1 && has_minor_from(state.contract(u, v), h, failed) {
                return true;
            }
        }
    }
    failed.insert(state);
    false
}

/// Whether `h` (minimum degree at least two) is a minor of `g`.
pub fn has_minor(g: &Graph, h: &Graph) -> Result<bool> {
    if g.node_count() > MINOR_NODE_LIMIT {
        return Err(Error::too_large("node count", MINOR_NODE_LIMIT, g.node_count()));
    }
    debug_assert!((0..h.node_count()).all(|v| h.degree(v) >= 2));
    Ok(has_minor_from(MinorState::from_graph(g), h, &mut HashSet::new()))
}

pub fn has_prism_or_pyramid_minor(g: &Graph) -> Result<bool> {
    Ok(has_minor(g, &prism())? || has_minor(g, &pyramid())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facets::verify_facet;
    use crate::graph::fixtures::*;
    use crate::graph::{NodeSet, WeightedSteinerGraph};
    use crate::rational::int;
    use crate::treecactus::enumerate_facets_le5;
    use proptest::prelude::*;

    fn pairs(list: &FacetList) -> Vec<(Vec<i64>, i64)> {
        list.nontrivial
            .iter()
            .map(|i| {
                (
                    i.coeffs.iter().map(|x| rational::to_i64(x).unwrap()).collect(),
                    rational::to_i64(&i.rhs).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn small_examples() {
        let k2 = SteinerGraph::from_names(&["s", "t"], &[("s", "t")], &["s", "t"]).unwrap();
        assert_eq!(pairs(&oracle_facets(&k2).unwrap()), vec![(vec![1], 1)]);
        assert_eq!(pairs(&oracle_facets(&path_sat()).unwrap()), vec![(vec![1, 1], 1)]);
    }

    #[test]
    fn triangle_by_hand() {
        // blocker in R^3: c1+c3 ≥ 1, c1+c2 ≥ 1, c2+c3 ≥ 1, c ≥ 0; vertices
        // (1,1,0), (1,0,1), (0,1,1) and (1/2,1/2,1/2)
        let tri = SteinerGraph::all_terminal(cycle(3)).unwrap();
        let got = pairs(&oracle_facets(&tri).unwrap());
        assert_eq!(
            got,
            vec![(vec![0, 1, 1], 1), (vec![1, 0, 1], 1), (vec![1, 1, 0], 1), (vec![1, 1, 1], 2)]
        );
        assert_eq!(oracle_facets(&tri).unwrap(), oracle_facets_naive(&tri, 1000).unwrap());
    }

    #[test]
    fn every_oracle_facet_is_certified() {
        let graphs = [
            SteinerGraph::all_terminal(cycle(5)).unwrap(),
            SteinerGraph::all_terminal(complete(4)).unwrap(),
            SteinerGraph::new(complete(4), [0, 1].into_iter().collect()).unwrap(),
        ];
        for g in &graphs {
            for ineq in &oracle_facets(g).unwrap().nontrivial {
                let wg = WeightedSteinerGraph::new(g.clone(), ineq.coeffs.clone()).unwrap();
                let verdict = verify_facet(&wg).unwrap();
                assert_eq!(verdict.certificate().expect("facet").gamma, ineq.rhs);
                assert_eq!(validate_inequality(g, ineq).unwrap(), Validity::Valid);
            }
        }
    }

    #[test]
    fn matches_classification_for_few_terminals() {
        let graphs = [
            SteinerGraph::all_terminal(cycle(4)).unwrap(),
            SteinerGraph::all_terminal(complete(4)).unwrap(),
            SteinerGraph::new(complete(5), [0, 1, 2].into_iter().collect()).unwrap(),
        ];
        for g in &graphs {
            let limits = OracleLimits::extended();
            assert_eq!(
                oracle_facets_with(g, &limits).unwrap().nontrivial,
                enumerate_facets_le5(g).unwrap()
            );
        }
    }

    #[test]
    fn prism_weights_appear_among_facets() {
        let prism = SteinerGraph::all_terminal(prism()).unwrap();
        let facets = oracle_facets_with(&prism, &OracleLimits::extended()).unwrap();
        let expected = EdgeVector::from_ints(&[1, 1, 1, 1, 1, 1, 2, 2, 2]);
        assert!(facets.nontrivial.iter().any(|i| i.coeffs == expected && i.rhs == int(4)));
    }

    #[test]
    fn guards() {
        let k5 = SteinerGraph::all_terminal(complete(5)).unwrap();
        assert!(oracle_facets(&k5).is_ok());
        let k6 = SteinerGraph::all_terminal(complete(6)).unwrap();
        assert!(oracle_facets(&k6).unwrap_err().is_guard());
        let c8 = SteinerGraph::all_terminal(cycle(8)).unwrap();
        assert_eq!(
            oracle_facets(&c8).unwrap_err(),
            Error::too_large("Steiner cut count", 64, 127)
        );
    }

    #[test]
    fn validate_examples() {
        let tri = SteinerGraph::all_terminal(cycle(3)).unwrap();
        let ok = Inequality::new(EdgeVector::ones(3), int(2), Kind::Other);
        assert_eq!(validate_inequality(&tri, &ok).unwrap(), Validity::Valid);
        let bad = Inequality::new(EdgeVector::ones(3), int(3), Kind::Other);
        let Validity::ViolatedBy(w) = validate_inequality(&tri, &bad).unwrap() else {
            panic!("expected a violation")
        };
        assert!(w.members.len() == 1 || w.members.len() == 2);

        let p = path_sat();
        let x1 = Inequality::new(EdgeVector::from_ints(&[1, 0]), int(1), Kind::Other);
        let Validity::ViolatedBy(w) = validate_inequality(&p, &x1).unwrap() else {
            panic!("expected a violation")
        };
        assert_eq!(p.graph().cut_edges(w.members), vec![1]);
    }

    #[test]
    fn minor_examples() {
        assert!(has_prism_or_pyramid_minor(&prism()).unwrap());
        assert!(has_prism_or_pyramid_minor(&pyramid()).unwrap());
        assert!(!has_minor(&pyramid(), &prism()).unwrap());
        assert!(has_prism_or_pyramid_minor(&complete(6)).unwrap());
        assert!(!has_prism_or_pyramid_minor(&complete(5)).unwrap());
        let k33 = Graph::numbered(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert!(!has_prism_or_pyramid_minor(&k33).unwrap());
        // prism with one matching edge subdivided still has it as a minor
        let sub = Graph::numbered(
            7,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 6), (6, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(has_minor(&sub, &prism()).unwrap());
        assert!(has_prism_or_pyramid_minor(&complete(13)).unwrap_err().is_guard());
    }

    fn random_graph() -> impl Strategy<Value = SteinerGraph> {
        (3usize..=5, any::<u64>(), any::<u64>()).prop_filter_map("connected", |(n, edge_bits, term_bits)| {
            let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let edges: Vec<_> = all
                .iter()
                .enumerate()
                .filter(|&(i, _)| edge_bits >> i & 1 == 1)
                .map(|(_, &e)| e)
                .take(6)
                .collect();
            let g = Graph::numbered(n, &edges).ok()?;
            if !g.is_connected() {
                return None;
            }
            let t = NodeSet::from_bits(term_bits).intersection(NodeSet::full(n));
            SteinerGraph::new(g, t).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn double_description_matches_naive(g in random_graph()) {
            prop_assert_eq!(oracle_facets(&g).unwrap(), oracle_facets_naive(&g, 1_000_000).unwrap());
        }
    }
}
