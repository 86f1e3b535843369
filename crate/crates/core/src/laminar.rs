//! Laminar families, uncrossing of roots and laminar root bases.

use num_traits::Zero;

use crate::cuts::{self, RootList};
use crate::error::{Error, Result};
use crate::exactla::BinaryRowSpace;
use crate::facets::{self, cut_row};
use crate::graph::{CutSet, NodeSet, WeightedSteinerGraph};
use crate::rational::Rational;

/// `a ∩ b`, `a \ b` and `b \ a` are all nonempty.
pub fn sets_intersect(a: NodeSet, b: NodeSet) -> bool {
    a.meets(b) && !a.is_subset(b) && !b.is_subset(a)
}

/// Distinct nonempty members, no two of which intersect.
pub fn is_laminar(family: &[NodeSet]) -> bool {
    family.iter().enumerate().all(|(i, &a)| {
        !a.is_empty() && family[i + 1..].iter().all(|&b| a != b && !sets_intersect(a, b))
    })
}

/// The members of `family` that intersect `s`.
pub fn intersecting_members(s: NodeSet, family: &[NodeSet]) -> Vec<NodeSet> {
    family.iter().copied().filter(|&l| sets_intersect(s, l)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaminarFamily {
    members: Vec<NodeSet>,
}

impl LaminarFamily {
    pub fn new(members: Vec<NodeSet>) -> Result<Self> {
        if !is_laminar(&members) {
            return Err(Error::NotLaminar);
        }
        Ok(LaminarFamily { members })
    }

    pub fn members(&self) -> &[NodeSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Inclusion-minimal members.
    pub fn minimal_members(&self) -> Vec<NodeSet> {
        self.members
            .iter()
            .copied()
            .filter(|&a| !self.members.iter().any(|&b| b != a && b.is_subset(a)))
            .collect()
    }

    /// Inclusion-maximal members.
    pub fn maximal_members(&self) -> Vec<NodeSet> {
        self.members
            .iter()
            .copied()
            .filter(|&a| !self.members.iter().any(|&b| b != a && a.is_subset(b)))
            .collect()
    }

    /// `|L_min|`, plus one if there is a single maximal member.
    pub fn width(&self) -> Result<usize> {
        if self.members.is_empty() {
            return Err(Error::Empty);
        }
        let base = self.minimal_members().len();
        Ok(if self.maximal_members().len() == 1 { base + 1 } else { base })
    }
}

pub fn minimal_members(family: &[NodeSet]) -> Result<Vec<NodeSet>> {
    Ok(LaminarFamily::new(family.to_vec())?.minimal_members())
}

pub fn width(family: &[NodeSet]) -> Result<usize> {
    LaminarFamily::new(family.to_vec())?.width()
}

/// `|L| ≤ |ground| + |L_min| − 1`.
pub fn laminar_bound_check(family: &LaminarFamily, ground: NodeSet) -> bool {
    family.len() < ground.len() + family.minimal_members().len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UncrossKind {
    CapCup,
    Diff,
}

impl UncrossKind {
    pub fn as_str(self) -> &'static str {
        match self {
            UncrossKind::CapCup => "cap_cup",
            UncrossKind::Diff => "diff",
        }
    }
}

struct RootOracle<'a> {
    wg: &'a WeightedSteinerGraph,
    gamma: Rational,
}

impl RootOracle<'_> {
    fn is_root(&self, s: NodeSet) -> bool {
        let n = self.wg.sg.node_count();
        !s.is_empty()
            && s != crate::graph::NodeSet::full(n)
            && self.wg.sg.separates_terminals(s)
            && self.wg.weights.cut_weight(self.wg.graph(), s) == self.gamma
    }

    fn incidence_sum(&self, a: NodeSet, b: NodeSet) -> Vec<u8> {
        let graph = self.wg.graph();
        (0..graph.edge_count())
            .map(|e| graph.crosses(a, e) as u8 + graph.crosses(b, e) as u8)
            .collect()
    }

    fn uncross(&self, s1: NodeSet, s2: NodeSet) -> Result<(NodeSet, NodeSet, UncrossKind)> {
        if !self.is_root(s1) || !self.is_root(s2) {
            return Err(Error::NotRoots);
        }
        if !sets_intersect(s1, s2) {
            return Err(Error::NotIntersecting);
        }
        let target = self.incidence_sum(s1, s2);
        let candidates = [
            (s1.intersection(s2), s1.union(s2), UncrossKind::CapCup),
            (s1.difference(s2), s2.difference(s1), UncrossKind::Diff),
        ];
        for (a, b, kind) in candidates {
            if self.is_root(a) && self.is_root(b) && self.incidence_sum(a, b) == target {
                let sg = &self.wg.sg;
                return Ok((sg.canonical(a), sg.canonical(b), kind));
            }
        }
        Err(Error::UncrossingFailed)
    }
}

/// Replaces two intersecting roots by two roots with the same total
/// incidence vector, preferring `S1∩S2, S1∪S2` over `S1\S2, S2\S1`.
pub fn uncross(wg: &WeightedSteinerGraph, s1: &CutSet, s2: &CutSet) -> Result<(CutSet, CutSet, UncrossKind)> {
    s1.validate(wg.graph())?;
    s2.validate(wg.graph())?;
    let gamma = cuts::roots(wg)?.gamma;
    let oracle = RootOracle { wg, gamma };
    let (a, b, kind) = oracle.uncross(s1.members, s2.members)?;
    Ok((CutSet::new(a), CutSet::new(b), kind))
}

/// A laminar family of canonical roots whose incidence vectors form a basis
/// of the edge space. Grows a laminar independent family greedily, starting
/// from terminal singletons, and then repeatedly takes a root outside the
/// span with the fewest intersecting members and uncrosses it against them
/// until it fits.
pub fn laminar_root_basis(wg: &WeightedSteinerGraph) -> Result<LaminarFamily> {
    facets::is_facet_inducing(wg).map_err(|reason| Error::NotFacetInducing(reason.to_string()))?;
    let graph = wg.graph();
    let m = graph.edge_count();
    let all_edges: Vec<usize> = (0..m).collect();
    let RootList { roots, gamma } = cuts::roots(wg)?;
    let oracle = RootOracle { wg, gamma };
    let row = |s: NodeSet| cut_row(graph, s, &all_edges);

    let mut ordered: Vec<NodeSet> = roots.iter().map(|r| r.members).collect();
    ordered.sort_by(|&a, &b| a.len().cmp(&b.len()).then(a.lex_cmp(b)));

    let mut family: Vec<NodeSet> = Vec::new();
    let mut space = BinaryRowSpace::new(m);
    let try_add = |s: NodeSet, family: &mut Vec<NodeSet>, space: &mut BinaryRowSpace| {
        if intersecting_members(s, family).is_empty() && !family.contains(&s) && space.insert(&row(s)) {
            family.push(s);
        }
    };
    let mut singletons: Vec<usize> = wg.sg.terminals().iter().collect();
    singletons.sort_by(|&a, &b| graph.name(a).cmp(graph.name(b)));
    for t in singletons {
        let s = wg.sg.canonical(NodeSet::singleton(t));
        if oracle.is_root(s) {
            try_add(s, &mut family, &mut space);
        }
    }
    for &s in &ordered {
        try_add(s, &mut family, &mut space);
    }

    let mut budget = 64 * (m + 1) * (m + 1);
    while space.rank() < m {
        let outside: Vec<NodeSet> = ordered
            .iter()
            .copied()
            .filter(|&s| !space.contains(&row(s)))
            .collect();
        let mut s = *outside
            .iter()
            .min_by(|&&a, &&b| {
                intersecting_members(a, &family)
                    .len()
                    .cmp(&intersecting_members(b, &family).len())
                    .then(a.lex_cmp(b))
            })
            .ok_or_else(|| Error::Internal("roots do not span the edge space".into()))?;
        loop {
            let crossing = intersecting_members(s, &family);
            let Some(&l) = crossing.iter().min_by(|&&a, &&b| a.lex_cmp(b)) else {
                break;
            };
            budget = budget
                .checked_sub(1)
                .ok_or_else(|| Error::Internal("uncrossing did not terminate".into()))?;
            let (a, b, _) = oracle.uncross(s, l)?;
            s = if !space.contains(&row(a)) {
                a
            } else if !space.contains(&row(b)) {
                b
            } else {
                return Err(Error::Internal("both uncrossed roots lie in the span".into()));
            };
        }
        try_add(s, &mut family, &mut space);
        if !family.contains(&s) {
            return Err(Error::Internal("exchange step failed to extend the family".into()));
        }
        for &r in &ordered {
            try_add(r, &mut family, &mut space);
        }
    }
    debug_assert!(family.iter().all(|&s| oracle.is_root(s) && !oracle.gamma.is_zero()));
    LaminarFamily::new(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{EdgeVector, Graph, SteinerGraph};

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn intersect_examples() {
        assert!(sets_intersect(set(&[1, 2]), set(&[2, 3])));
        assert!(!sets_intersect(set(&[1]), set(&[1, 2])));
        assert!(!sets_intersect(set(&[1]), set(&[2])));
    }

    #[test]
    fn laminar_examples() {
        assert!(is_laminar(&[set(&[1]), set(&[2]), set(&[1, 2])]));
        assert!(!is_laminar(&[set(&[1, 2]), set(&[2, 3])]));
        assert!(is_laminar(&[]));
        assert!(!is_laminar(&[set(&[1]), set(&[1])]));
    }

    #[test]
    fn minimal_member_examples() {
        assert_eq!(
            minimal_members(&[set(&[1]), set(&[2]), set(&[1, 2])]).unwrap(),
            vec![set(&[1]), set(&[2])]
        );
        assert_eq!(minimal_members(&[set(&[1, 2, 3])]).unwrap(), vec![set(&[1, 2, 3])]);
        assert_eq!(
            minimal_members(&[set(&[1]), set(&[1, 2]), set(&[1, 2, 3])]).unwrap(),
            vec![set(&[1])]
        );
        assert_eq!(minimal_members(&[set(&[1, 2]), set(&[2, 3])]), Err(Error::NotLaminar));
    }

    #[test]
    fn intersecting_member_examples() {
        assert_eq!(intersecting_members(set(&[2, 3]), &[set(&[1, 2]), set(&[4])]), vec![set(&[1, 2])]);
        assert!(intersecting_members(set(&[1]), &[set(&[1, 2]), set(&[2, 3])]).is_empty());
        assert_eq!(
            intersecting_members(set(&[2, 3]), &[set(&[1, 2]), set(&[3, 4]), set(&[2, 3])]),
            vec![set(&[1, 2]), set(&[3, 4])]
        );
    }

    #[test]
    fn width_examples() {
        assert_eq!(width(&[set(&[1]), set(&[2])]).unwrap(), 2);
        assert_eq!(width(&[set(&[1]), set(&[1, 2])]).unwrap(), 2);
        assert_eq!(width(&[set(&[1]), set(&[2]), set(&[1, 2])]).unwrap(), 3);
        assert_eq!(width(&[]), Err(Error::Empty));
    }

    #[test]
    fn bound_examples() {
        let chain = LaminarFamily::new(vec![set(&[0]), set(&[1]), set(&[2]), set(&[0, 1]), set(&[0, 1, 2])]).unwrap();
        assert!(laminar_bound_check(&chain, set(&[0, 1, 2])));
        let one = LaminarFamily::new(vec![set(&[0])]).unwrap();
        assert!(laminar_bound_check(&one, set(&[0, 1])));
    }

    fn c4() -> WeightedSteinerGraph {
        WeightedSteinerGraph::unit(SteinerGraph::all_terminal(cycle(4)).unwrap())
    }

    #[test]
    fn uncross_examples() {
        // nodes named 1..4 sit at indices 0..3
        let wg = c4();
        let (a, b, kind) = uncross(&wg, &CutSet::new(set(&[0, 1])), &CutSet::new(set(&[1, 2]))).unwrap();
        assert_eq!((a.members, b.members, kind), (set(&[1]), set(&[0, 1, 2]), UncrossKind::CapCup));

        // the difference variant sums correctly too, but is not preferred
        let graph = wg.graph();
        let sum = |x: NodeSet, y: NodeSet| -> Vec<u8> {
            (0..4).map(|e| graph.crosses(x, e) as u8 + graph.crosses(y, e) as u8).collect()
        };
        assert_eq!(sum(set(&[0]), set(&[2])), sum(set(&[0, 1]), set(&[1, 2])));

        assert_eq!(
            uncross(&wg, &CutSet::new(set(&[0])), &CutSet::new(set(&[2]))),
            Err(Error::NotIntersecting)
        );
        assert_eq!(
            uncross(&wg, &CutSet::new(set(&[0, 2])), &CutSet::new(set(&[1, 2]))),
            Err(Error::NotRoots)
        );
    }

    fn check_basis(wg: &WeightedSteinerGraph) -> LaminarFamily {
        let fam = laminar_root_basis(wg).unwrap();
        let graph = wg.graph();
        let m = graph.edge_count();
        assert_eq!(fam.len(), m);
        assert!(is_laminar(fam.members()));
        let gamma = cuts::roots(wg).unwrap().gamma;
        let mut space = BinaryRowSpace::new(m);
        for &s in fam.members() {
            assert!(wg.sg.separates_terminals(s));
            assert_eq!(wg.weights.cut_weight(graph, s), gamma);
            assert!(space.insert(&cut_row(graph, s, &(0..m).collect::<Vec<_>>())));
        }
        for s in fam.minimal_members() {
            assert_eq!(s.len(), 1);
            assert!(wg.sg.terminals().meets(s));
        }
        fam
    }

    #[test]
    fn basis_examples() {
        let p = WeightedSteinerGraph::from_ints(path_sat(), &[1, 1]).unwrap();
        let fam = check_basis(&p);
        let mut members = fam.members().to_vec();
        members.sort();
        assert_eq!(members, vec![set(&[0]), set(&[0, 1])]);

        check_basis(&c4());
        assert_eq!(check_basis(&WeightedSteinerGraph::unit(SteinerGraph::all_terminal(cycle(5)).unwrap())).len(), 5);
    }

    #[test]
    fn basis_of_prism() {
        let g = Graph::numbered(6, &[(0, 2), (2, 4), (4, 0), (1, 3), (3, 5), (5, 1), (0, 1), (2, 3), (4, 5)]).unwrap();
        let sg = SteinerGraph::all_terminal(g).unwrap();
        check_basis(&WeightedSteinerGraph::new(sg, EdgeVector::from_ints(&[1, 1, 1, 1, 1, 1, 2, 2, 2])).unwrap());
    }

    #[test]
    fn basis_requires_facet() {
        let c4 = SteinerGraph::new(cycle(4), set(&[0, 1])).unwrap();
        assert!(matches!(
            laminar_root_basis(&WeightedSteinerGraph::unit(c4)),
            Err(Error::NotFacetInducing(_))
        ));
    }

    fn all_subsets(n: usize) -> Vec<NodeSet> {
        (1u64..(1 << n)).map(NodeSet::from_bits).collect()
    }

    #[test]
    fn triple_intersection_exhaustive() {
        let sets = all_subsets(5);
        for &a in &sets {
            for &b in &sets {
                if !sets_intersect(a, b) {
                    continue;
                }
                let derived = [a.intersection(b), a.union(b), a.difference(b), b.difference(a)];
                for &c in &sets {
                    if derived.iter().any(|&d| sets_intersect(c, d)) {
                        assert!(sets_intersect(c, a) || sets_intersect(c, b), "{a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn shrinking_exhaustive() {
        // all laminar families on a 4-element ground set, grown by adding sets
        let sets = all_subsets(4);
        let mut families: Vec<Vec<NodeSet>> = vec![vec![]];
        let mut frontier = families.clone();
        while let Some(fam) = frontier.pop() {
            for &s in &sets {
                if fam.last().is_none_or(|&l| s > l) {
                    let mut next = fam.clone();
                    next.push(s);
                    if is_laminar(&next) {
                        families.push(next.clone());
                        frontier.push(next);
                    }
                }
            }
        }
        for fam in &families {
            for &l in fam {
                for &s in &sets {
                    if !sets_intersect(s, l) {
                        continue;
                    }
                    let before = intersecting_members(s, fam);
                    for d in [s.intersection(l), s.union(l), s.difference(l), l.difference(s)] {
                        let after = intersecting_members(d, fam);
                        assert!(after.len() < before.len());
                        assert!(after.iter().all(|x| before.contains(x)));
                    }
                }
            }
        }
    }
}
