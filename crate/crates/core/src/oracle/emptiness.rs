//! Exact emptiness tests for the core and the strict core.
//!
//! Blocking depends only on the agents' utilities, and splitting a block
//! into the connected components of its induced subgraph leaves every
//! utility unchanged. The search therefore only builds partitions whose
//! blocks induce connected subgraphs. Agents are placed in maximum
//! cardinality search order; at each node the block of the first unplaced
//! agent is chosen, and a branch is cut as soon as a blocking coalition
//! exists among placed agents, whose utilities are final.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::game::{BlockingMode, BlockingWitness, GameInstance};
use crate::graph::{Agent, Graph};
use crate::partition::{Coalition, Partition};
use crate::stability::{find_blocking_coalition, ScanOrder};

use super::enumerate::PartitionEnumerator;
use super::Guard;

const SAMPLED_REFUTATIONS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Empty,
    Nonempty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptinessCertificate {
    pub verdict: Verdict,
    pub mode: BlockingMode,
    /// A stable partition when the verdict is nonempty.
    pub stable_partition: Option<Partition>,
    /// Sample partitions with a blocking coalition each, when empty.
    pub refutations: Vec<(Partition, BlockingWitness)>,
    /// Search nodes visited.
    pub nodes_explored: u64,
}

impl EmptinessCertificate {
    pub fn is_empty(&self) -> bool {
        self.verdict == Verdict::Empty
    }
}

/// Whether every `k`-bounded partition has a strongly blocking coalition.
pub fn core_emptiness(game: &GameInstance, guard: &Guard) -> Result<EmptinessCertificate> {
    decide(game, BlockingMode::Strong, guard)
}

/// Whether every `k`-bounded partition has a weakly blocking coalition.
pub fn sc_emptiness(game: &GameInstance, guard: &Guard) -> Result<EmptinessCertificate> {
    decide(game, BlockingMode::Weak, guard)
}

fn decide(game: &GameInstance, mode: BlockingMode, guard: &Guard) -> Result<EmptinessCertificate> {
    guard.check_emptiness(game.n())?;
    let mut search = Search {
        game,
        mode,
        order: mcs_order(game.graph()),
        placed: vec![false; game.n()],
        blocks: Vec::new(),
        nodes: 0,
    };
    let found = search.run();
    let mut cert = EmptinessCertificate {
        verdict: if found.is_some() { Verdict::Nonempty } else { Verdict::Empty },
        mode,
        stable_partition: found,
        refutations: Vec::new(),
        nodes_explored: search.nodes,
    };
    if cert.is_empty() {
        let singletons = Partition::singletons(game.n());
        let mut samples = vec![singletons.clone()];
        if game.n() <= guard.enumeration_n {
            samples.extend(
                PartitionEnumerator::unguarded(game.n(), game.k())
                    .filter(|p| *p != singletons)
                    .take(SAMPLED_REFUTATIONS - 1),
            );
        }
        cert.refutations = samples
            .into_iter()
            .filter_map(|p| {
                let w = find_blocking_coalition(game, &p, mode, ScanOrder::Lexicographic)?;
                Some((p, w))
            })
            .collect();
    }
    Ok(cert)
}

/// Maximum cardinality search: repeatedly take the agent with the most
/// already-ordered neighbours, lowest id first.
fn mcs_order(g: &Graph) -> Vec<Agent> {
    let n = g.n();
    let mut score = vec![0usize; n];
    let mut taken = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (1..=n)
            .filter(|&v| !taken[v - 1])
            .max_by(|&a, &b| score[a - 1].cmp(&score[b - 1]).then(b.cmp(&a)))
            .expect("an untaken agent remains");
        taken[v - 1] = true;
        order.push(v);
        for &(u, _) in g.neighbors(v) {
            score[u - 1] += 1;
        }
    }
    order
}

struct Search<'a> {
    game: &'a GameInstance,
    mode: BlockingMode,
    order: Vec<Agent>,
    placed: Vec<bool>,
    blocks: Vec<Coalition>,
    nodes: u64,
}

impl Search<'_> {
    fn partial(&self) -> Partition {
        let mut blocks = self.blocks.clone();
        blocks.extend((1..=self.game.n()).filter(|&v| !self.placed[v - 1]).map(Coalition::singleton));
        Partition::from_blocks_unchecked(self.game.n(), blocks)
    }

    fn run(&mut self) -> Option<Partition> {
        self.nodes += 1;
        let Some(&a) = self.order.iter().find(|&&v| !self.placed[v - 1]) else {
            return Some(self.partial());
        };
        for block in self.candidate_blocks(a) {
            for &v in block.members() {
                self.placed[v - 1] = true;
            }
            self.blocks.push(block);
            let p = self.partial();
            let blocked =
                crate::stability::first_blocking_in(self.game, &p, self.mode, &self.placed).is_some();
            if !blocked {
                if let Some(found) = self.run() {
                    return Some(found);
                }
            }
            let block = self.blocks.pop().expect("pushed above");
            for &v in block.members() {
                self.placed[v - 1] = false;
            }
        }
        None
    }

    /// Connected blocks of size `1..=k` containing `a` among unplaced agents,
    /// largest first.
    fn candidate_blocks(&self, a: Agent) -> Vec<Coalition> {
        let g = self.game.graph();
        let k = self.game.k();
        let mut found: Vec<Coalition> = Vec::new();
        let mut stack: Vec<Vec<Agent>> = vec![vec![a]];
        let mut seen = alloc::collections::BTreeSet::new();
        while let Some(set) = stack.pop() {
            if !seen.insert(set.clone()) {
                continue;
            }
            found.push(Coalition::new(set.iter().copied()));
            if set.len() == k {
                continue;
            }
            for &m in &set {
                for &(u, _) in g.neighbors(m) {
                    if !self.placed[u - 1] && !set.contains(&u) {
                        let mut next = set.clone();
                        next.push(u);
                        next.sort_unstable();
                        stack.push(next);
                    }
                }
            }
        }
        found.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
        found
    }
}
