//! Game instances, utilities, welfare and blocking predicates.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{Agent, Graph, Weight};
use crate::partition::{Coalition, Partition};
use crate::rational::Rational;

/// A hedonic game with bounded coalition size: graph plus cap `k`.
///
/// `weight_scale` records the power of ten applied to decimal input weights;
/// all weights in `graph` are already multiplied by it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameInstance {
    graph: Graph,
    k: usize,
    weight_scale: u64,
}

impl GameInstance {
    pub fn new(graph: Graph, k: usize) -> Result<GameInstance> {
        GameInstance::with_scale(graph, k, 1)
    }

    pub fn with_scale(graph: Graph, k: usize, weight_scale: u64) -> Result<GameInstance> {
        if k < 2 {
            return Err(Error::InvalidK { k });
        }
        if weight_scale == 0 {
            return Err(Error::InvalidScale);
        }
        Ok(GameInstance { graph, k, weight_scale })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn weight_scale(&self) -> u64 {
        self.weight_scale
    }

    /// Every edge has real weight 1.
    pub fn is_unweighted(&self) -> bool {
        self.weight_scale == 1 && self.graph.has_unit_weights()
    }

    /// Same graph, different cap.
    pub fn with_k(&self, k: usize) -> Result<GameInstance> {
        GameInstance::with_scale(self.graph.clone(), k, self.weight_scale)
    }

    /// Checks that `p` partitions this game's agents into `k`-bounded blocks.
    pub fn validate(&self, p: &Partition) -> Result<()> {
        if p.n() != self.n() {
            return Err(Error::InvalidPartition(alloc::format!(
                "partition covers {} agents, game has {}",
                p.n(),
                self.n()
            )));
        }
        p.check_bounded(self.k)
    }

    /// `W(v, S)` for a coalition containing `v`.
    pub fn coalition_weight(&self, v: Agent, s: &Coalition) -> Result<Weight> {
        coalition_weight(&self.graph, v, s)
    }

    /// `u(v, P)`: the weight `v` receives from its own block.
    pub fn utility(&self, v: Agent, p: &Partition) -> Weight {
        weight_into(&self.graph, v, p.block_of(v).members())
    }

    /// `u(P) = Σ_v u(v, P)`.
    pub fn social_welfare(&self, p: &Partition) -> Weight {
        social_welfare(&self.graph, p)
    }

    /// Utilities of all agents, indexed by `agent - 1`.
    pub fn utilities(&self, p: &Partition) -> Vec<Weight> {
        self.graph.agents().map(|v| self.utility(v, p)).collect()
    }

    /// Returns a witness when `s` blocks `p` under `mode`.
    pub fn blocks(
        &self,
        s: &Coalition,
        p: &Partition,
        mode: BlockingMode,
    ) -> Result<Option<BlockingWitness>> {
        if s.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        if s.len() > self.k {
            return Err(Error::CoalitionTooLarge { size: s.len(), k: self.k });
        }
        if let Some(&a) = s.members().iter().find(|&&a| a == 0 || a > self.n()) {
            return Err(Error::AgentOutOfRange { agent: a, n: self.n() });
        }
        let per_agent: Vec<AgentGain> = s
            .members()
            .iter()
            .map(|&v| AgentGain {
                agent: v,
                coalition_weight: weight_into(&self.graph, v, s.members()),
                current_utility: self.utility(v, p),
            })
            .collect();
        let blocking = mode.holds(
            per_agent.iter().map(|g| (g.coalition_weight, g.current_utility)),
            self.weight_scale,
        );
        Ok(blocking.then(|| BlockingWitness { coalition: s.clone(), mode, per_agent }))
    }
}

/// `W(v, S)`; errors when `v ∉ S`.
pub fn coalition_weight(g: &Graph, v: Agent, s: &Coalition) -> Result<Weight> {
    if !s.contains(v) {
        return Err(Error::NotAMember { agent: v });
    }
    if let Some(&a) = s.members().iter().find(|&&a| a == 0 || a > g.n()) {
        return Err(Error::AgentOutOfRange { agent: a, n: g.n() });
    }
    Ok(weight_into(g, v, s.members()))
}

/// Sum of weights from `v` into `members`; `v` itself contributes nothing.
#[inline]
pub fn weight_into(g: &Graph, v: Agent, members: &[Agent]) -> Weight {
    members.iter().map(|&u| if u == v { 0 } else { g.weight(v, u) }).sum()
}

pub fn social_welfare(g: &Graph, p: &Partition) -> Weight {
    p.blocks()
        .iter()
        .map(|b| b.members().iter().map(|&v| weight_into(g, v, b.members())).sum::<Weight>())
        .sum()
}

/// Which deviation counts as blocking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockingMode {
    /// Every member strictly gains.
    Strong,
    /// Nobody loses and somebody strictly gains.
    Weak,
    /// Every member gains by more than the additive slack (in real weight units).
    EpsA(Rational),
    /// Every member's new weight exceeds the factor times the old utility.
    EpsM(Rational),
}

impl BlockingMode {
    /// Per-member test for the modes that are conjunctions of a single
    /// inequality. `scale` converts the additive slack into scaled units.
    #[inline]
    pub fn member_improves(&self, new: Weight, old: Weight, scale: u64) -> bool {
        match *self {
            BlockingMode::Strong => new > old,
            BlockingMode::Weak => new >= old,
            BlockingMode::EpsA(eps) => {
                let den = eps.denom() as u128;
                new as u128 * den > old as u128 * den + eps.numer() as u128 * scale as u128
            }
            BlockingMode::EpsM(eps) => {
                new as u128 * eps.denom() as u128 > old as u128 * eps.numer() as u128
            }
        }
    }

    /// Whole-coalition test over `(W(v,S), u(v,P))` pairs.
    pub fn holds<I>(&self, pairs: I, scale: u64) -> bool
    where
        I: IntoIterator<Item = (Weight, Weight)>,
    {
        let mut any_strict = false;
        for (new, old) in pairs {
            if !self.member_improves(new, old, scale) {
                return false;
            }
            any_strict |= new > old;
        }
        match self {
            BlockingMode::Weak => any_strict,
            _ => true,
        }
    }
}

impl fmt::Display for BlockingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockingMode::Strong => f.write_str("strong"),
            BlockingMode::Weak => f.write_str("weak"),
            BlockingMode::EpsA(e) => write!(f, "eps_a({e})"),
            BlockingMode::EpsM(e) => write!(f, "eps_m({e})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgentGain {
    pub agent: Agent,
    /// `W(v, S)`
    pub coalition_weight: Weight,
    /// `u(v, P)`
    pub current_utility: Weight,
}

/// A coalition together with the utilities that certify it blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingWitness {
    pub coalition: Coalition,
    pub mode: BlockingMode,
    pub per_agent: Vec<AgentGain>,
}

impl BlockingWitness {
    /// Recomputes every recorded value from `game` and `p` and re-tests the mode.
    pub fn recheck(&self, game: &GameInstance, p: &Partition) -> bool {
        match game.blocks(&self.coalition, p, self.mode) {
            Ok(Some(w)) => w.per_agent == self.per_agent,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn fig5() -> GameInstance {
        let g = Graph::new(
            9,
            [
                (1, 2, 6),
                (2, 3, 7),
                (2, 6, 5),
                (3, 6, 4),
                (3, 4, 5),
                (3, 7, 4),
                (6, 7, 4),
                (6, 8, 7),
                (4, 5, 6),
                (4, 7, 7),
                (7, 8, 5),
                (8, 9, 6),
            ],
        )
        .unwrap();
        GameInstance::new(g, 3).unwrap()
    }

    fn fig1() -> Graph {
        Graph::unweighted(
            8,
            [
                (1, 2),
                (1, 3),
                (1, 5),
                (2, 4),
                (3, 4),
                (4, 5),
                (3, 5),
                (4, 6),
                (6, 7),
                (4, 7),
                (1, 6),
                (2, 7),
                (5, 8),
                (4, 8),
                (6, 8),
                (3, 6),
            ],
        )
        .unwrap()
    }

    #[test]
    fn coalition_weight_examples() {
        let g5 = fig5();
        assert_eq!(g5.coalition_weight(8, &[8, 9].into()), Ok(6));
        assert_eq!(g5.coalition_weight(4, &[4].into()), Ok(0));
        assert_eq!(coalition_weight(&fig1(), 1, &[1, 3, 6].into()), Ok(2));
        assert_eq!(
            g5.coalition_weight(1, &[8, 9].into()),
            Err(Error::NotAMember { agent: 1 })
        );
    }

    #[test]
    fn utility_and_welfare_examples() {
        let game = GameInstance::new(fig1(), 3).unwrap();
        let p = Partition::new(8, [vec![1, 3, 6], vec![2, 4, 7], vec![5, 8]]).unwrap();
        assert_eq!(game.utility(5, &p), 1);
        assert_eq!(game.social_welfare(&p), 14);
        let s = Partition::singletons(8);
        assert_eq!(game.utility(3, &s), 0);
        assert_eq!(game.social_welfare(&s), 0);

        let g5 = fig5();
        let p5 = Partition::new(9, [vec![1, 2], vec![3], vec![4], vec![5], vec![6], vec![7], vec![8], vec![9]])
            .unwrap();
        assert_eq!(g5.utility(1, &p5), 6);

        let k4 = GameInstance::new(Graph::complete(4), 4).unwrap();
        let one = Partition::new(4, [vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(k4.social_welfare(&one), 12);
    }

    #[test]
    fn blocking_examples() {
        let g5 = fig5();
        let p = Partition::singletons(9);
        let w = g5.blocks(&[1, 2].into(), &p, BlockingMode::Strong).unwrap().unwrap();
        assert_eq!(w.per_agent[0], AgentGain { agent: 1, coalition_weight: 6, current_utility: 0 });
        assert!(w.recheck(&g5, &p));

        let k4 = GameInstance::new(Graph::complete(4), 3).unwrap();
        let p = Partition::new(4, [vec![1, 2], vec![3, 4]]).unwrap();
        assert!(k4.blocks(&[1, 2].into(), &p, BlockingMode::Weak).unwrap().is_none());
        assert!(k4.blocks(&[1, 2, 3].into(), &p, BlockingMode::Strong).unwrap().is_some());
        assert_eq!(
            k4.blocks(&[1, 2, 3, 4].into(), &p, BlockingMode::Strong),
            Err(Error::CoalitionTooLarge { size: 4, k: 3 })
        );
    }

    #[test]
    fn eps_modes_use_exact_arithmetic() {
        let third = Rational::new(1, 3).unwrap();
        // 3·W > 3·u + 1 ⟺ W > u + 1/3
        assert!(BlockingMode::EpsA(third).member_improves(2, 1, 1));
        assert!(!BlockingMode::EpsA(Rational::ONE).member_improves(2, 1, 1));
        // scale 10: real slack 1 is 10 scaled units
        assert!(!BlockingMode::EpsA(Rational::ONE).member_improves(20, 10, 10));
        assert!(BlockingMode::EpsA(Rational::ONE).member_improves(21, 10, 10));
        let three_halves = Rational::new(3, 2).unwrap();
        assert!(BlockingMode::EpsM(three_halves).member_improves(4, 2, 1));
        assert!(!BlockingMode::EpsM(three_halves).member_improves(3, 2, 1));
    }

    fn arb_game() -> impl Strategy<Value = (GameInstance, Vec<usize>)> {
        (2usize..9, 2usize..5).prop_flat_map(|(n, k)| {
            let pairs: Vec<(usize, usize)> =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            (
                proptest::collection::vec(0u64..4, m),
                proptest::collection::vec(0..n, n),
            )
                .prop_map(move |(ws, labels)| {
                    let edges = pairs
                        .iter()
                        .zip(ws)
                        .filter(|(_, w)| *w > 0)
                        .map(|(&(u, v), w)| (u, v, w));
                    let g = Graph::new(n, edges).unwrap();
                    (GameInstance::new(g, k).unwrap(), labels)
                })
        })
    }

    fn partition_from(n: usize, labels: &[usize]) -> Partition {
        let mut blocks = alloc::vec![Vec::new(); n];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i + 1);
        }
        Partition::new(n, blocks.into_iter().filter(|b| !b.is_empty())).unwrap()
    }

    proptest! {
        #[test]
        fn welfare_is_twice_intra_block_weight((game, labels) in arb_game()) {
            let p = partition_from(game.n(), &labels);
            let intra: Weight = game
                .graph()
                .edges()
                .iter()
                .filter(|e| p.block_index(e.u) == p.block_index(e.v))
                .map(|e| e.weight)
                .sum();
            prop_assert_eq!(game.social_welfare(&p), 2 * intra);
        }

        #[test]
        fn mode_relations(
            (game, labels) in arb_game(),
            picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..5),
        ) {
            let p = partition_from(game.n(), &labels);
            let s = Coalition::new(picks.iter().map(|i| i.index(game.n()) + 1));
            prop_assume!(s.len() <= game.k());
            let strong = game.blocks(&s, &p, BlockingMode::Strong).unwrap();
            let weak = game.blocks(&s, &p, BlockingMode::Weak).unwrap();
            let eps_a0 = game.blocks(&s, &p, BlockingMode::EpsA(Rational::ZERO)).unwrap();
            let eps_m1 = game.blocks(&s, &p, BlockingMode::EpsM(Rational::ONE)).unwrap();
            if strong.is_some() {
                prop_assert!(weak.is_some());
            }
            prop_assert_eq!(strong.is_some(), eps_a0.is_some());
            prop_assert_eq!(strong.is_some(), eps_m1.is_some());
            if let Some(w) = weak {
                prop_assert!(w.recheck(&game, &p));
            }
        }
    }
}
