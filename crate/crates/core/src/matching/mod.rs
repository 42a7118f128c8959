//! Exact maximum-weight and maximum-cardinality matching.
//!
//! Ties among optimal matchings are broken towards the lexicographically
//! smallest sorted edge list, where each edge is written `(min, max)`. The
//! rule is realised by fixing edges greedily in lexicographic order and
//! accepting an edge only when an optimal completion still exists, so the
//! result depends on the edge set alone and not on insertion order.

mod blossom;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Agent, Graph, Weight};

/// A set of vertex-disjoint edges, stored sorted as `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Matching {
    edges: Vec<(Agent, Agent)>,
}

impl Matching {
    /// Builds a matching from pairs, checking vertex-disjointness.
    pub fn new<I: IntoIterator<Item = (Agent, Agent)>>(pairs: I) -> Result<Matching> {
        let mut edges: Vec<(Agent, Agent)> =
            pairs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        let mut ends: Vec<Agent> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        ends.sort_unstable();
        if let Some(w) = ends.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidMatching(alloc::format!(
                "agent {} is covered twice",
                w[0]
            )));
        }
        if let Some(&(u, _)) = edges.iter().find(|&&(u, v)| u == v) {
            return Err(Error::InvalidMatching(alloc::format!("self-pair on agent {u}")));
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[(Agent, Agent)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: Agent, v: Agent) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Total weight in `g`.
    pub fn weight(&self, g: &Graph) -> Weight {
        self.edges.iter().map(|&(u, v)| g.weight(u, v)).sum()
    }

    /// Fails unless every pair is an edge of `g`.
    pub fn check_in(&self, g: &Graph) -> Result<()> {
        for &(u, v) in &self.edges {
            if u == 0 || v > g.n() || g.weight(u, v) == 0 {
                return Err(Error::InvalidMatching(alloc::format!("({u}, {v}) is not an edge")));
            }
        }
        Ok(())
    }
}

/// A matching of maximum total weight.
pub fn max_weight_matching(g: &Graph) -> Matching {
    let edges: Vec<(Agent, Agent, Weight)> =
        g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
    lex_optimal(g.n(), edges)
}

/// A matching with the largest number of edges; weights are ignored.
pub fn max_cardinality_matching(g: &Graph) -> Matching {
    let edges: Vec<(Agent, Agent, Weight)> = g.edges().iter().map(|e| (e.u, e.v, 1)).collect();
    lex_optimal(g.n(), edges)
}

/// Optimal weight of a matching restricted to edges with both ends in `alive`.
fn optimum(n: usize, edges: &[(Agent, Agent, Weight)], alive: &[bool]) -> Weight {
    let sub: Vec<(usize, usize, i64)> = edges
        .iter()
        .filter(|&&(u, v, _)| alive[u - 1] && alive[v - 1])
        .map(|&(u, v, w)| (u - 1, v - 1, w as i64))
        .collect();
    let mates = blossom::max_weight_mates(n, &sub);
    sub.iter()
        .filter(|&&(u, v, _)| mates[u] == Some(v))
        .map(|&(_, _, w)| w as Weight)
        .sum()
}

fn lex_optimal(n: usize, mut edges: Vec<(Agent, Agent, Weight)>) -> Matching {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            core::mem::swap(&mut e.0, &mut e.1);
        }
    }
    edges.sort_unstable();
    let mut alive = alloc::vec![true; n];
    let mut remaining = optimum(n, &edges, &alive);
    let mut chosen = Vec::new();
    for &(u, v, w) in &edges {
        if remaining == 0 {
            break;
        }
        if !alive[u - 1] || !alive[v - 1] || w > remaining {
            continue;
        }
        alive[u - 1] = false;
        alive[v - 1] = false;
        if w + optimum(n, &edges, &alive) == remaining {
            chosen.push((u, v));
            remaining -= w;
        } else {
            alive[u - 1] = true;
            alive[v - 1] = true;
        }
    }
    Matching { edges: chosen }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Best weight over all matchings by exhaustive branching on edges.
    fn brute_force(g: &Graph) -> Weight {
        fn go(edges: &[(Agent, Agent, Weight)], used: &mut Vec<bool>) -> Weight {
            let Some((&(u, v, w), rest)) = edges.split_first() else {
                return 0;
            };
            let mut best = go(rest, used);
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(w + go(rest, used));
                used[u] = false;
                used[v] = false;
            }
            best
        }
        let edges: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
        go(&edges, &mut alloc::vec![false; g.n() + 1])
    }

    #[test]
    fn triangle_has_one_edge() {
        let m = max_cardinality_matching(&Graph::complete(3));
        assert_eq!(m.edges(), &[(1, 2)]);
    }

    #[test]
    fn path_with_fork_prefers_smallest_edges() {
        let g = Graph::unweighted(6, [(1, 2), (2, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        assert_eq!(max_cardinality_matching(&g).edges(), &[(1, 2), (3, 4)]);
    }

    #[test]
    fn empty_graph_has_empty_matching() {
        assert!(max_weight_matching(&Graph::empty(5)).is_empty());
        assert!(max_cardinality_matching(&Graph::empty(0)).is_empty());
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(1, 2, 7)]).unwrap();
        let m = max_weight_matching(&g);
        assert_eq!(m.edges(), &[(1, 2)]);
        assert_eq!(m.weight(&g), 7);
    }

    #[test]
    fn two_triangles_with_bridge() {
        let g = Graph::new(
            6,
            [(1, 2, 10), (1, 3, 10), (2, 3, 10), (4, 5, 10), (4, 6, 10), (5, 6, 10), (3, 4, 1)],
        )
        .unwrap();
        let m = max_weight_matching(&g);
        assert_eq!(m.edges(), &[(1, 2), (3, 4), (5, 6)]);
        assert_eq!(m.weight(&g), 21);
    }

    #[test]
    fn weight_beats_cardinality() {
        let g = Graph::new(4, [(1, 2, 1), (2, 3, 5), (3, 4, 1)]).unwrap();
        assert_eq!(max_weight_matching(&g).edges(), &[(2, 3)]);
        assert_eq!(max_cardinality_matching(&g).edges(), &[(1, 2), (3, 4)]);
    }

    #[test]
    fn rejects_overlapping_pairs() {
        assert!(Matching::new([(1, 2), (2, 3)]).is_err());
        assert!(Matching::new([(2, 1), (3, 4)]).unwrap().contains(1, 2));
    }

    fn arb_graph(max_n: usize, max_w: u64) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(move |n| {
            let pairs: Vec<(usize, usize)> =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            let len = pairs.len();
            proptest::collection::vec(0..=max_w, len).prop_map(move |ws| {
                let edges = pairs.iter().zip(ws).filter(|(_, w)| *w > 0).map(|(&(u, v), w)| (u, v, w));
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn weight_matches_brute_force(g in arb_graph(10, 9)) {
            let m = max_weight_matching(&g);
            m.check_in(&g).unwrap();
            prop_assert_eq!(m.weight(&g), brute_force(&g));
        }

        #[test]
        fn cardinality_matches_unit_weight_optimum(g in arb_graph(10, 3)) {
            let m = max_cardinality_matching(&g);
            m.check_in(&g).unwrap();
            let unit = Graph::unweighted(g.n(), g.edges().iter().map(|e| (e.u, e.v))).unwrap();
            prop_assert_eq!(m.len() as Weight, brute_force(&unit));
            prop_assert_eq!(max_weight_matching(&unit).len(), m.len());
        }

        #[test]
        fn insertion_order_is_irrelevant(g in arb_graph(8, 4)) {
            let mut rev: Vec<_> = g.edges().iter().map(|e| (e.v, e.u, e.weight)).collect();
            rev.reverse();
            let h = Graph::new(g.n(), rev).unwrap();
            prop_assert_eq!(max_weight_matching(&g), max_weight_matching(&h));
        }
    }
}
