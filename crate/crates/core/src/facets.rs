//! Facet certification by root bases, the necessary structural properties of
//! facet inducing Steiner graphs, irreducibility and Steiner degree.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cuts::{self, RootList};
use crate::error::{Error, Result};
use crate::exactla::{self, BinaryRowSpace};
use crate::graph::{CutSet, EdgeVector, Graph, NodeSet, SteinerGraph, WeightedSteinerGraph};
use crate::rational::{self, Rational};

/// Largest node count accepted by [`steiner_degree`].
pub const STEINER_DEGREE_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Tree,
    Cactus,
    Oracle,
    Other,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Tree => "tree",
            Kind::Cactus => "cactus",
            Kind::Oracle => "oracle",
            Kind::Other => "other",
        }
    }
}

/// `coeffs · x ≥ rhs` over the edges of a host graph. Comparison and hashing
/// ignore `kind`; the order is by `rhs`, then the coefficient vector.
#[derive(Clone)]
pub struct Inequality {
    pub coeffs: EdgeVector,
    pub rhs: Rational,
    pub kind: Kind,
}

impl Inequality {
    pub fn new(coeffs: EdgeVector, rhs: Rational, kind: Kind) -> Self {
        Inequality { coeffs, rhs, kind }
    }

    /// Minimum integer form of `coeffs` with the matching minimum Steiner cut
    /// value of `host` as right-hand side.
    pub fn normalized(host: &SteinerGraph, coeffs: &EdgeVector, kind: Kind) -> Result<Self> {
        let coeffs = exactla::minimum_integer_form(coeffs)?;
        let wg = WeightedSteinerGraph::new(host.clone(), coeffs)?;
        let gamma = cuts::roots(&wg)?.gamma;
        Ok(Inequality::new(wg.weights, gamma, kind))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.support()
    }

    pub fn lhs_at_cut(&self, graph: &Graph, s: NodeSet) -> Rational {
        self.coeffs.cut_weight(graph, s)
    }
}

impl PartialEq for Inequality {
    fn eq(&self, other: &Self) -> bool {
        self.rhs == other.rhs && self.coeffs == other.coeffs
    }
}

impl Eq for Inequality {}

impl std::hash::Hash for Inequality {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rhs.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Inequality {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Inequality {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rhs
            .cmp(&other.rhs)
            .then_with(|| self.coeffs.as_slice().cmp(other.coeffs.as_slice()))
    }
}

impl fmt::Debug for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} >= {} ({})", self.coeffs, rational::format(&self.rhs), self.kind.as_str())
    }
}

/// Sorts and removes duplicates.
pub fn canonical_list(mut list: Vec<Inequality>) -> Vec<Inequality> {
    list.sort();
    list.dedup();
    list
}

/// Roots whose incidence vectors, restricted to the support of the weights,
/// form a basis of the support's edge space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCertificate {
    pub roots: Vec<CutSet>,
    pub gamma: Rational,
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotFacetReason {
    RankDeficient { rank: usize, required: usize },
    ZeroWeightEdge(usize),
    NotMinimumIntegerForm,
    GammaZero,
    /// The check itself could not be run.
    Failed(Error),
}

impl fmt::Display for NotFacetReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotFacetReason::RankDeficient { rank, required } => {
                write!(f, "roots span rank {rank} < {required}")
            }
            NotFacetReason::ZeroWeightEdge(e) => write!(f, "edge {e} has weight zero"),
            NotFacetReason::NotMinimumIntegerForm => write!(f, "weights are not in minimum integer form"),
            NotFacetReason::GammaZero => write!(f, "minimum Steiner cut value is zero"),
            NotFacetReason::Failed(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Facet(FacetCertificate),
    NotFacet(NotFacetReason),
}

impl Verdict {
    pub fn is_facet(&self) -> bool {
        matches!(self, Verdict::Facet(_))
    }

    pub fn certificate(&self) -> Option<&FacetCertificate> {
        match self {
            Verdict::Facet(c) => Some(c),
            Verdict::NotFacet(_) => None,
        }
    }
}

/// The 0/1 incidence row of `δ(s)` restricted to `support`.
pub(crate) fn cut_row(graph: &Graph, s: NodeSet, support: &[usize]) -> Vec<i128> {
    support.iter().map(|&e| graph.crosses(s, e) as i128).collect()
}

/// Greedily extracts independent roots, restricted to `support`.
pub(crate) fn independent_roots(graph: &Graph, roots: &[CutSet], support: &[usize]) -> Vec<CutSet> {
    let mut space = BinaryRowSpace::new(support.len());
    let mut chosen = Vec::new();
    for r in roots {
        if space.rank() == support.len() {
            break;
        }
        if space.insert(&cut_row(graph, r.members, support)) {
            chosen.push(*r);
        }
    }
    chosen
}

/// Certifies that `c·x ≥ γ_c` defines a facet of the cut dominant of the
/// support graph `(G_c, T)`. The weights must be in minimum integer form.
pub fn verify_facet(wg: &WeightedSteinerGraph) -> Result<Verdict> {
    if !exactla::is_minimum_integer_form(&wg.weights) {
        return Err(Error::NotMinimumIntegerForm);
    }
    let RootList { roots, gamma } = cuts::roots(wg)?;
    if gamma.is_zero() {
        return Err(Error::GammaZero);
    }
    let support = wg.weights.support();
    let basis = independent_roots(wg.graph(), &roots, &support);
    if basis.len() < support.len() {
        return Ok(Verdict::NotFacet(NotFacetReason::RankDeficient {
            rank: basis.len(),
            required: support.len(),
        }));
    }
    Ok(Verdict::Facet(FacetCertificate {
        roots: basis,
        gamma,
        support,
    }))
}

/// Whether `wg` is a facet inducing Steiner graph with facet weights `c`:
/// full support, minimum integer form, positive `γ` and a root basis.
pub fn is_facet_inducing(wg: &WeightedSteinerGraph) -> std::result::Result<FacetCertificate, NotFacetReason> {
    if let Some(e) = (0..wg.weights.len()).find(|&e| !wg.weights[e].is_positive()) {
        return Err(NotFacetReason::ZeroWeightEdge(e));
    }
    match verify_facet(wg) {
        Ok(Verdict::Facet(cert)) => Ok(cert),
        Ok(Verdict::NotFacet(reason)) => Err(reason),
        Err(Error::NotMinimumIntegerForm) => Err(NotFacetReason::NotMinimumIntegerForm),
        Err(Error::GammaZero) => Err(NotFacetReason::GammaZero),
        Err(e) => Err(NotFacetReason::Failed(e)),
    }
}

/// A violated necessary property of facet inducing Steiner graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub item: u8,
    pub detail: String,
}

/// Checks the seven necessary properties of facet weights:
///
/// 1. `G` is connected.
/// 2. Every nonterminal has degree at least two.
/// 3. The facet is bounded, i.e. all weights are positive.
/// 4. Both shores of every root induce connected subgraphs.
/// 5. Every edge lies in some root.
/// 6. For every node `v`, each component of `G - v` contains a terminal.
/// 7. `c(e) ≤ γ` for every edge, with equality exactly for bridges.
pub fn structural_check(wg: &WeightedSteinerGraph) -> Result<Vec<Violation>> {
    let sg = &wg.sg;
    let graph = sg.graph();
    let n = graph.node_count();
    let mut out = Vec::new();
    let mut violate = |item: u8, detail: String| out.push(Violation { item, detail });

    if !graph.is_connected() {
        violate(1, "graph is disconnected".into());
    }
    for v in 0..n {
        if !sg.is_terminal(v) && graph.degree(v) < 2 {
            violate(2, format!("nonterminal `{}` has degree {}", graph.name(v), graph.degree(v)));
        }
    }
    for e in 0..graph.edge_count() {
        if !wg.weights[e].is_positive() {
            violate(3, format!("edge {e} has weight zero, so the face is unbounded"));
        }
    }
    let RootList { roots, gamma } = cuts::roots(wg)?;
    for r in &roots {
        if !graph.induces_connected(r.members) || !graph.induces_connected(r.members.complement(n)) {
            violate(4, format!("root {:?} has a disconnected shore", r.names(graph)));
        }
    }
    for e in 0..graph.edge_count() {
        if !roots.iter().any(|r| graph.crosses(r.members, e)) {
            violate(5, format!("edge {e} lies in no root"));
        }
    }
    for v in 0..n {
        let components = crate::graph::connected_components(graph, NodeSet::singleton(v), &[]);
        for comp in components {
            if !comp.meets(sg.terminals()) {
                violate(6, format!(
                    "a component of G - `{}` has no terminal: {:?}",
                    graph.name(v),
                    graph.names_of(comp)
                ));
            }
        }
    }
    for e in 0..graph.edge_count() {
        let c = &wg.weights[e];
        let bridge = graph.is_bridge(e);
        if *c > gamma || (*c == gamma) != bridge {
            violate(7, format!(
                "edge {e}: weight {} against gamma {} ({})",
                rational::format(c),
                rational::format(&gamma),
                if bridge { "bridge" } else { "not a bridge" }
            ));
        }
    }
    Ok(out)
}

/// No cut node and no nonterminal of degree two.
pub fn is_irreducible(g: &SteinerGraph) -> bool {
    let graph = g.graph();
    graph.cut_nodes().is_empty()
        && (0..graph.node_count()).all(|v| g.is_terminal(v) || graph.degree(v) != 2)
}

fn defines_facet_for(graph: &Graph, terminals: NodeSet, ineq: &Inequality) -> Result<bool> {
    let sg = SteinerGraph::new(graph.clone(), terminals)?;
    let wg = WeightedSteinerGraph::new(sg, ineq.coeffs.clone())?;
    let RootList { roots, gamma } = cuts::roots(&wg)?;
    if gamma != ineq.rhs {
        return Ok(false);
    }
    let support = ineq.coeffs.support();
    Ok(independent_roots(graph, &roots, &support).len() == support.len())
}

/// The smallest terminal count `|T|` for which `ineq` defines a facet of the
/// Steiner cut dominant of `(g, T)`. `ineq` must define a facet of the cut
/// dominant of `g` itself.
pub fn steiner_degree(g: &Graph, ineq: &Inequality) -> Result<usize> {
    let n = g.node_count();
    if n > STEINER_DEGREE_LIMIT {
        return Err(Error::too_large("node count", STEINER_DEGREE_LIMIT, n));
    }
    if ineq.coeffs.len() != g.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: g.edge_count(),
            actual: ineq.coeffs.len(),
        });
    }
    if !exactla::is_minimum_integer_form(&ineq.coeffs) {
        return Err(Error::NotAFacetOfCutDominant("coefficients are not in minimum integer form".into()));
    }
    if !ineq.rhs.is_positive() {
        return Err(Error::NotAFacetOfCutDominant("right-hand side is not positive".into()));
    }
    if !defines_facet_for(g, g.all_nodes(), ineq)? {
        return Err(Error::NotAFacetOfCutDominant(
            "not valid and facet defining with all nodes as terminals".into(),
        ));
    }
    for tau in 2..n {
        let subsets: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() as usize == tau).collect();
        let found = subsets
            .par_iter()
            .map(|&m| defines_facet_for(g, NodeSet::from_bits(m), ineq))
            .collect::<Result<Vec<bool>>>()?;
        if found.into_iter().any(|b| b) {
            return Ok(tau);
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::rational::int;

    pub(crate) fn prism() -> WeightedSteinerGraph {
        let g = Graph::new(
            &["v1", "v2", "v3", "v4", "v5", "v6"],
            &[
                ("v1", "v3"),
                ("v3", "v5"),
                ("v5", "v1"),
                ("v2", "v4"),
                ("v4", "v6"),
                ("v6", "v2"),
                ("v1", "v2"),
                ("v3", "v4"),
                ("v5", "v6"),
            ],
        )
        .unwrap();
        let sg = SteinerGraph::all_terminal(g).unwrap();
        WeightedSteinerGraph::from_ints(sg, &[1, 1, 1, 1, 1, 1, 2, 2, 2]).unwrap()
    }

    fn cert(wg: &WeightedSteinerGraph) -> FacetCertificate {
        verify_facet(wg).unwrap().certificate().cloned().expect("facet")
    }

    #[test]
    fn verify_examples() {
        let p = WeightedSteinerGraph::from_ints(path_sat(), &[1, 1]).unwrap();
        assert_eq!(cert(&p).roots.len(), 2);

        let c5 = WeightedSteinerGraph::unit(SteinerGraph::all_terminal(cycle(5)).unwrap());
        let c = cert(&c5);
        assert_eq!((c.roots.len(), c.gamma), (5, int(2)));

        let c = cert(&prism());
        assert_eq!((c.roots.len(), c.gamma), (9, int(4)));
    }

    #[test]
    fn verify_preconditions() {
        let p = WeightedSteinerGraph::from_ints(path_sat(), &[2, 2]).unwrap();
        assert_eq!(verify_facet(&p), Err(Error::NotMinimumIntegerForm));
        let g = Graph::numbered(3, &[(0, 1), (1, 2)]).unwrap();
        let sg = SteinerGraph::new(g, [0, 2].into_iter().collect()).unwrap();
        let wg = WeightedSteinerGraph::from_ints(sg, &[1, 0]).unwrap();
        assert_eq!(verify_facet(&wg), Err(Error::GammaZero));
    }

    #[test]
    fn zero_weights_certify_the_support() {
        // triangle with weight zero on one edge: the remaining path is a facet
        let tri = SteinerGraph::all_terminal(cycle(3)).unwrap();
        let wg = WeightedSteinerGraph::from_ints(tri, &[1, 1, 0]).unwrap();
        assert!(verify_facet(&wg).unwrap().is_facet());
        assert_eq!(is_facet_inducing(&wg), Err(NotFacetReason::ZeroWeightEdge(2)));
    }

    #[test]
    fn facet_inducing_examples() {
        let k2 = WeightedSteinerGraph::unit(SteinerGraph::all_terminal(complete(2)).unwrap());
        assert!(is_facet_inducing(&k2).is_ok());

        let c4 = SteinerGraph::new(cycle(4), [0, 1].into_iter().collect()).unwrap();
        let reason = is_facet_inducing(&WeightedSteinerGraph::unit(c4)).unwrap_err();
        assert!(matches!(reason, NotFacetReason::RankDeficient { required: 4, .. }));
    }

    #[test]
    fn structural_examples() {
        let c5 = WeightedSteinerGraph::unit(SteinerGraph::all_terminal(cycle(5)).unwrap());
        assert_eq!(structural_check(&c5).unwrap(), vec![]);
        assert_eq!(structural_check(&prism()).unwrap(), vec![]);

        let sg = SteinerGraph::from_names(
            &["s", "a", "t", "p"],
            &[("s", "a"), ("a", "t"), ("a", "p")],
            &["s", "t"],
        )
        .unwrap();
        let items: Vec<u8> = structural_check(&WeightedSteinerGraph::unit(sg))
            .unwrap()
            .into_iter()
            .map(|v| v.item)
            .collect();
        assert!(items.contains(&2));

        // Steiner edge s-t with a nonterminal pendant p at t: the only root is
        // δ({s}), so the pendant edge lies in no root
        let sg = SteinerGraph::from_names(&["s", "t", "p"], &[("s", "t"), ("t", "p")], &["s", "t"]).unwrap();
        let items: Vec<u8> = structural_check(&WeightedSteinerGraph::unit(sg))
            .unwrap()
            .into_iter()
            .map(|v| v.item)
            .collect();
        assert!(items.contains(&5));
    }

    #[test]
    fn triangle_with_two_terminals_covers_every_edge() {
        let sg = SteinerGraph::new(cycle(3), [0, 1].into_iter().collect()).unwrap();
        let violations = structural_check(&WeightedSteinerGraph::unit(sg)).unwrap();
        assert!(violations.iter().all(|v| v.item != 5));
    }

    #[test]
    fn irreducible_examples() {
        assert!(is_irreducible(&SteinerGraph::all_terminal(cycle(5)).unwrap()));
        assert!(!is_irreducible(&path_sat()));
        let bowtie = Graph::numbered(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(!is_irreducible(&SteinerGraph::all_terminal(bowtie).unwrap()));
    }

    #[test]
    fn steiner_degree_examples() {
        let path = Graph::numbered(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let ineq = Inequality::new(EdgeVector::ones(4), int(1), Kind::Other);
        assert_eq!(steiner_degree(&path, &ineq).unwrap(), 2);

        // spanning tree with four leaves (spider)
        let spider = Graph::numbered(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (0, 5)]).unwrap();
        let ineq = Inequality::new(EdgeVector::ones(5), int(1), Kind::Other);
        assert_eq!(steiner_degree(&spider, &ineq).unwrap(), 4);

        let c6 = cycle(6);
        let ineq = Inequality::new(EdgeVector::ones(6), int(2), Kind::Other);
        assert_eq!(steiner_degree(&c6, &ineq).unwrap(), 3);

        let bad = Inequality::new(EdgeVector::ones(6), int(3), Kind::Other);
        assert!(matches!(steiner_degree(&c6, &bad), Err(Error::NotAFacetOfCutDominant(_))));
    }
}
