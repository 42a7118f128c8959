//! Pairwise coalition merging: the contractual strict core solver and the
//! Arbmax baseline.
//!
//! Merging two blocks changes welfare by twice the weight crossing between
//! them, so a merge improves welfare exactly when some edge crosses and the
//! union fits within `k`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::GameInstance;
use crate::graph::Agent;
use crate::mnm::crossing_weight;
use crate::partition::{Coalition, Partition};

use super::SolverStats;

/// Stream of candidate merges for [`arbmax`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeOrder {
    /// Merge the blocks of each listed pair of agents, in order.
    Explicit(Vec<(Agent, Agent)>),
    /// The graph's edges, sorted and then shuffled by the seed.
    Seeded(u64),
}

/// A partition in the contractual strict core.
///
/// Starting from singletons, merges the first pair of blocks (in block-index
/// order) whose union fits and is joined by an edge, then rescans. At most
/// `n - 1` merges happen.
pub fn find_csc(game: &GameInstance) -> (Partition, SolverStats) {
    let mut stats = SolverStats::default();
    let p = complete_merges(game, Partition::singletons(game.n()), &mut stats);
    (p, stats)
}

/// A partition that is maximal under welfare-improving pairwise merges,
/// reached by following `order` and then merging any remaining improving
/// pairs in block-index order.
pub fn arbmax(game: &GameInstance, order: &MergeOrder) -> Result<Partition> {
    let n = game.n();
    let pairs: Vec<(Agent, Agent)> = match order {
        MergeOrder::Explicit(pairs) => {
            if let Some(bad) = pairs.iter().flat_map(|&(a, b)| [a, b]).find(|&a| a == 0 || a > n) {
                return Err(Error::AgentOutOfRange { agent: bad, n });
            }
            pairs.clone()
        }
        MergeOrder::Seeded(seed) => {
            let mut edges: Vec<(Agent, Agent)> =
                game.graph().edges().iter().map(|e| e.endpoints()).collect();
            edges.sort_unstable();
            edges.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
            edges
        }
    };
    let mut p = Partition::singletons(n);
    for (a, b) in pairs {
        let (i, j) = (p.block_index(a), p.block_index(b));
        if i != j && improves(game, &p.blocks()[i], &p.blocks()[j]) {
            p = merged(&p, i, j);
        }
    }
    Ok(complete_merges(game, p, &mut SolverStats::default()))
}

fn improves(game: &GameInstance, a: &Coalition, b: &Coalition) -> bool {
    a.len() + b.len() <= game.k() && crossing_weight(game.graph(), a, b) > 0
}

fn merged(p: &Partition, i: usize, j: usize) -> Partition {
    let union = p.blocks()[i].union(&p.blocks()[j]);
    let mut blocks: Vec<Coalition> = p
        .blocks()
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != i && x != j)
        .map(|(_, b)| b.clone())
        .collect();
    blocks.push(union);
    Partition::from_blocks_unchecked(p.n(), blocks)
}

fn complete_merges(game: &GameInstance, mut p: Partition, stats: &mut SolverStats) -> Partition {
    let mut welfare = game.social_welfare(&p);
    'outer: loop {
        let blocks = p.blocks();
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if improves(game, &blocks[i], &blocks[j]) {
                    let next = merged(&p, i, j);
                    let after = game.social_welfare(&next);
                    let formed = blocks[i].union(&blocks[j]);
                    stats.record(formed, welfare, after, false);
                    welfare = after;
                    p = next;
                    continue 'outer;
                }
            }
        }
        return p;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn star_chain(k: usize) -> Graph {
        let mut edges: Vec<(Agent, Agent)> = (1..k).map(|i| (i, i + 1)).collect();
        for hub in 1..=k {
            let first = k + (hub - 1) * (k - 1) + 1;
            edges.extend((first..first + k - 1).map(|leaf| (hub, leaf)));
        }
        Graph::unweighted(k * k, edges).unwrap()
    }

    #[test]
    fn disjoint_edges_do_not_merge() {
        let g = Graph::unweighted(4, [(1, 2), (3, 4)]).unwrap();
        let game = GameInstance::new(g, 4).unwrap();
        let (p, stats) = find_csc(&game);
        assert_eq!(p.to_vecs(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(stats.outer_iterations, 2);
    }

    #[test]
    fn star_joins_fully() {
        let g = Graph::unweighted(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        let game = GameInstance::new(g, 4).unwrap();
        let (p, stats) = find_csc(&game);
        assert_eq!(p.to_vecs(), vec![vec![1, 2, 3, 4]]);
        assert_eq!(stats.welfare_trajectory, vec![2, 4, 6]);
    }

    #[test]
    fn star_chain_orders() {
        for k in 3..=5 {
            let game = GameInstance::new(star_chain(k), k).unwrap();
            let chain = MergeOrder::Explicit((1..k).map(|i| (i, i + 1)).collect());
            let p = arbmax(&game, &chain).unwrap();
            assert_eq!(game.social_welfare(&p), 2 * (k as u64 - 1));
            let stars: Vec<(Agent, Agent)> = (1..=k)
                .flat_map(|hub| {
                    let first = k + (hub - 1) * (k - 1) + 1;
                    (first..first + k - 1).map(move |leaf| (hub, leaf))
                })
                .collect();
            let p = arbmax(&game, &MergeOrder::Explicit(stars)).unwrap();
            assert_eq!(game.social_welfare(&p), 2 * (k * (k - 1)) as u64);
        }
    }

    #[test]
    fn edgeless_any_order() {
        let game = GameInstance::new(Graph::empty(5), 3).unwrap();
        assert_eq!(arbmax(&game, &MergeOrder::Seeded(3)).unwrap(), Partition::singletons(5));
        let order = MergeOrder::Explicit(vec![(1, 2), (3, 4)]);
        assert_eq!(arbmax(&game, &order).unwrap(), Partition::singletons(5));
        assert!(arbmax(&game, &MergeOrder::Explicit(vec![(1, 6)])).is_err());
    }

    #[test]
    fn seeded_order_is_maximal_and_deterministic() {
        let game = GameInstance::new(star_chain(4), 4).unwrap();
        for seed in 0..20 {
            let p = arbmax(&game, &MergeOrder::Seeded(seed)).unwrap();
            assert_eq!(p, arbmax(&game, &MergeOrder::Seeded(seed)).unwrap());
            let (q, stats) = {
                let mut stats = SolverStats::default();
                (complete_merges(&game, p.clone(), &mut stats), stats)
            };
            assert_eq!(p, q);
            assert_eq!(stats.outer_iterations, 0);
            assert!(p.blocks().iter().all(|b| game.graph().induces_connected(b.members())));
        }
    }
}
