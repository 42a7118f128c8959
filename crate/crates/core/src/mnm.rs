//! Match and Merge: `k - 1` rounds of maximum matching on a contracted graph.
//!
//! Round `l` matches the current graph `G_l`, contracts every matched pair into
//! a unified node and builds `G_{l+1}`. Two rules fill gaps in the plain
//! description of the method:
//!
//! * an edge of `G_{l+1}` joins a node created in this round to a node carried
//!   over unmatched, and only when their constituent sets together hold at
//!   most `k` agents and some original edge crosses between them;
//! * its weight is the total weight of the original edges crossing between
//!   the two constituent sets.
//!
//! With these rules the welfare of the output is exactly twice the total
//! matched weight over all rounds. Unweighted games use maximum-cardinality
//! matching, weighted games maximum-weight matching; both break ties towards
//! the lexicographically smallest edge list over node indices, with nodes
//! numbered by their smallest constituent.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::game::GameInstance;
use crate::graph::{Graph, Weight};
use crate::matching::{max_cardinality_matching, max_weight_matching, Matching};
use crate::partition::{Coalition, Partition};

/// The contracted graph `G_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedGraph {
    nodes: Vec<Coalition>,
    /// Node indices are 1-based positions in `nodes`.
    edges: Vec<(usize, usize, Weight)>,
    round: usize,
}

impl MergedGraph {
    /// `G_1`: one node per agent, the original edges.
    pub fn initial(g: &Graph) -> MergedGraph {
        MergedGraph {
            nodes: g.agents().map(Coalition::singleton).collect(),
            edges: g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect(),
            round: 1,
        }
    }

    pub fn nodes(&self) -> &[Coalition] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, Weight)] {
        &self.edges
    }

    pub fn round(&self) -> usize {
        self.round
    }

    /// The merged graph as a plain graph on nodes `1..=nodes().len()`.
    pub fn as_graph(&self) -> Graph {
        Graph::new(self.nodes.len(), self.edges.iter().copied())
            .expect("merged edges are simple and positive")
    }

    /// The partition formed by the constituent sets.
    pub fn partition(&self, n: usize) -> Partition {
        Partition::from_blocks_unchecked(n, self.nodes.clone())
    }
}

/// One round of the method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnMRound {
    pub round: usize,
    pub node_count: usize,
    pub edge_count: usize,
    /// Matched pairs as constituent sets.
    pub matching: Vec<(Coalition, Coalition)>,
    /// Total merged-edge weight of the matching.
    pub matched_weight: Weight,
}

/// Per-round record of a run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MnMTrace {
    pub rounds: Vec<MnMRound>,
}

impl MnMTrace {
    pub fn total_matched_weight(&self) -> Weight {
        self.rounds.iter().map(|r| r.matched_weight).sum()
    }
}

/// Contracts the pairs of `m` (given over node indices of `mg`) and builds the
/// next merged graph. `g` is the original graph, used for crossing weights.
pub fn merge_round(g: &Graph, mg: &MergedGraph, m: &Matching, k: usize) -> Result<MergedGraph> {
    let count = mg.nodes.len();
    let host = mg.as_graph();
    if m.edges().iter().any(|&(_, b)| b > count) {
        return Err(Error::InvalidMatching("node index outside the merged graph".into()));
    }
    m.check_in(&host)?;
    let mut matched = vec![false; count];
    let mut fresh = Vec::new();
    for &(a, b) in m.edges() {
        matched[a - 1] = true;
        matched[b - 1] = true;
        let union = mg.nodes[a - 1].union(&mg.nodes[b - 1]);
        if union.len() > k {
            return Err(Error::InvalidMatching(alloc::format!(
                "merging nodes {a} and {b} exceeds k = {k}"
            )));
        }
        fresh.push(union);
    }
    let carried: Vec<Coalition> = (0..count)
        .filter(|&i| !matched[i])
        .map(|i| mg.nodes[i].clone())
        .collect();
    let mut nodes: Vec<(Coalition, bool)> = fresh
        .into_iter()
        .map(|c| (c, true))
        .chain(carried.into_iter().map(|c| (c, false)))
        .collect();
    nodes.sort_unstable_by_key(|(c, _)| c.min());
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let (a, a_new) = &nodes[i];
            let (b, b_new) = &nodes[j];
            if a_new == b_new || a.len() + b.len() > k {
                continue;
            }
            let w = crossing_weight(g, a, b);
            if w > 0 {
                edges.push((i + 1, j + 1, w));
            }
        }
    }
    Ok(MergedGraph {
        nodes: nodes.into_iter().map(|(c, _)| c).collect(),
        edges,
        round: mg.round + 1,
    })
}

/// Total weight of original edges between two disjoint agent sets.
pub fn crossing_weight(g: &Graph, a: &Coalition, b: &Coalition) -> Weight {
    a.members()
        .iter()
        .map(|&u| b.members().iter().map(|&v| g.weight(u, v)).sum::<Weight>())
        .sum()
}

/// Runs all `k - 1` rounds and returns the partition of constituent sets.
pub fn match_and_merge(game: &GameInstance) -> (Partition, MnMTrace) {
    let g = game.graph();
    let k = game.k();
    let unweighted = game.is_unweighted();
    let mut mg = MergedGraph::initial(g);
    let mut trace = MnMTrace::default();
    for _ in 1..k {
        let host = mg.as_graph();
        let m = if unweighted {
            max_cardinality_matching(&host)
        } else {
            max_weight_matching(&host)
        };
        trace.rounds.push(MnMRound {
            round: mg.round,
            node_count: mg.nodes.len(),
            edge_count: mg.edges.len(),
            matching: m
                .edges()
                .iter()
                .map(|&(a, b)| (mg.nodes[a - 1].clone(), mg.nodes[b - 1].clone()))
                .collect(),
            matched_weight: m.weight(&host),
        });
        mg = merge_round(g, &mg, &m, k).expect("matching of the merged graph respects k");
    }
    (mg.partition(g.n()), trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig2() -> Graph {
        Graph::unweighted(6, [(1, 2), (2, 3), (3, 4), (4, 5), (4, 6)]).unwrap()
    }

    fn worst() -> Graph {
        Graph::new(
            6,
            [(1, 2, 10), (2, 3, 10), (1, 3, 10), (4, 5, 10), (4, 6, 10), (5, 6, 10), (3, 4, 1)],
        )
        .unwrap()
    }

    fn sets(v: &[&[usize]]) -> Vec<Coalition> {
        v.iter().map(|s| Coalition::new(s.iter().copied())).collect()
    }

    #[test]
    fn second_graph_of_the_fork_example() {
        let g = fig2();
        let g1 = MergedGraph::initial(&g);
        let m1 = Matching::new([(1, 2), (3, 4)]).unwrap();
        let g2 = merge_round(&g, &g1, &m1, 4).unwrap();
        assert_eq!(g2.nodes(), &sets(&[&[1, 2], &[3, 4], &[5], &[6]])[..]);
        assert_eq!(g2.edges(), &[(2, 3, 1), (2, 4, 1)]);
        assert_eq!(g2.round(), 2);
    }

    #[test]
    fn empty_matching_keeps_nodes() {
        let g = fig2();
        let g1 = MergedGraph::initial(&g);
        let g2 = merge_round(&g, &g1, &Matching::default(), 4).unwrap();
        assert_eq!(g2.nodes(), g1.nodes());
        assert!(g2.edges().is_empty());
    }

    #[test]
    fn merged_weight_sums_crossing_edges() {
        let g = worst();
        let g1 = MergedGraph::initial(&g);
        let g2 = merge_round(&g, &g1, &Matching::new([(1, 2)]).unwrap(), 3).unwrap();
        assert_eq!(g2.nodes()[0], Coalition::from([1, 2]));
        assert_eq!(g2.edges(), &[(1, 2, 20)]);
        let g2 = merge_round(&g, &g1, &Matching::new([(1, 2)]).unwrap(), 2).unwrap();
        assert!(g2.edges().is_empty());
    }

    #[test]
    fn rejects_bad_matchings() {
        let g = fig2();
        let g1 = MergedGraph::initial(&g);
        assert!(merge_round(&g, &g1, &Matching::new([(1, 3)]).unwrap(), 4).is_err());
        assert!(merge_round(&g, &g1, &Matching::new([(1, 9)]).unwrap(), 4).is_err());
    }

    #[test]
    fn fork_example_end_to_end() {
        let game = GameInstance::new(fig2(), 4).unwrap();
        let (p, trace) = match_and_merge(&game);
        assert_eq!(p.to_vecs(), vec![vec![1, 2], vec![3, 4, 5, 6]]);
        assert_eq!(trace.rounds.len(), 3);
        assert_eq!(
            trace.rounds[1].matching,
            vec![(Coalition::from([3, 4]), Coalition::singleton(5))]
        );
        assert_eq!(
            trace.rounds[2].matching,
            vec![(Coalition::from([3, 4, 5]), Coalition::singleton(6))]
        );
    }

    #[test]
    fn complete_graph_gives_perfect_matching() {
        for k in 3..=6 {
            let game = GameInstance::new(Graph::complete(2 * k), k).unwrap();
            let (p, trace) = match_and_merge(&game);
            assert_eq!(p.len(), k);
            assert!(p.blocks().iter().all(|b| b.len() == 2));
            assert_eq!(game.social_welfare(&p), 2 * k as Weight);
            assert_eq!(trace.rounds.len(), k - 1);
        }
    }

    #[test]
    fn weighted_worst_case() {
        let game = GameInstance::with_scale(worst(), 3, 10).unwrap();
        let (p, trace) = match_and_merge(&game);
        assert_eq!(p.to_vecs(), vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(trace.rounds[0].matched_weight, 21);
        assert_eq!(game.social_welfare(&p), 42);
    }

    #[test]
    fn edgeless_graph_stays_singletons() {
        let game = GameInstance::new(Graph::empty(5), 3).unwrap();
        let (p, _) = match_and_merge(&game);
        assert_eq!(p, Partition::singletons(5));
    }

    #[test]
    fn path_of_four_respects_cap() {
        let g = Graph::unweighted(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let game = GameInstance::new(g, 3).unwrap();
        let (p, _) = match_and_merge(&game);
        assert_eq!(p.max_block_size(), 2);
        assert_eq!(game.social_welfare(&p), 4);
    }

    fn arb_game() -> impl Strategy<Value = GameInstance> {
        (2usize..=10, 2usize..=5, 1u64..=4).prop_flat_map(|(n, k, max_w)| {
            let pairs: Vec<(usize, usize)> =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            proptest::collection::vec(0..=max_w, pairs.len()).prop_map(move |ws| {
                let edges =
                    pairs.iter().zip(ws).filter(|(_, w)| *w > 0).map(|(&(u, v), w)| (u, v, w));
                GameInstance::new(Graph::new(n, edges).unwrap(), k).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn output_is_bounded_and_welfare_is_twice_matched_weight(game in arb_game()) {
            let (p, trace) = match_and_merge(&game);
            game.validate(&p).unwrap();
            prop_assert_eq!(trace.rounds.len(), game.k() - 1);
            prop_assert_eq!(game.social_welfare(&p), 2 * trace.total_matched_weight());
            prop_assert!(game.social_welfare(&p) >= 2 * trace.rounds[0].matched_weight);
        }
    }
}
