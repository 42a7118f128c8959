//! Random-restart search for a core partition.
//!
//! From singletons, repeatedly pick a uniformly random strongly blocking
//! coalition and let it break off. Candidates are first drawn by rejection
//! sampling (size chosen in proportion to the number of coalitions of that
//! size, then a uniform combination); if sampling finds nothing the blocking
//! coalitions are enumerated exhaustively and one is picked uniformly. An
//! empty enumeration certifies that the partition is in the core.
//!
//! Every applied step that yields an already seen partition counts towards
//! `restart_threshold`; a novel partition resets the count. Reaching the
//! threshold restarts from singletons while keeping the seen set.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::Rng;

use crate::game::{weight_into, BlockingMode, GameInstance};
use crate::graph::{Agent, Weight};
use crate::partition::{Coalition, Partition};
use crate::stability::all_blocking;

use super::random::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicConfig {
    pub restart_threshold: u32,
    pub max_restarts: u32,
    /// Random draws per step before falling back to enumeration.
    pub sample_tries: u32,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig { restart_threshold: 100, max_restarts: 50, sample_tries: 2000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeuristicStats {
    pub restarts: u32,
    pub applied_blocks: u64,
    pub distinct_partitions: u64,
    /// Steps that needed the exhaustive fallback.
    pub exhaustive_scans: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeuristicOutcome {
    /// A partition with no strongly blocking coalition.
    InCore(Partition),
    /// `max_restarts` restarts were used up.
    RestartsExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicReport {
    pub outcome: HeuristicOutcome,
    pub stats: HeuristicStats,
}

impl HeuristicReport {
    pub fn partition(&self) -> Option<&Partition> {
        match &self.outcome {
            HeuristicOutcome::InCore(p) => Some(p),
            HeuristicOutcome::RestartsExhausted => None,
        }
    }
}

pub fn core_heuristic(game: &GameInstance, rng: &mut RngStream, config: &HeuristicConfig) -> HeuristicReport {
    let n = game.n();
    let mut stats = HeuristicStats::default();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut p = Partition::singletons(n);
    seen.insert(p.canonical_form());
    let sampler = Sampler::new(n, game.k());
    let mut repeats = 0u32;
    loop {
        let utility = game.utilities(&p);
        let s = match sampler.draw_blocking(game, &utility, rng, config.sample_tries) {
            Some(s) => s,
            None => {
                stats.exhaustive_scans += 1;
                let all = all_blocking(game, &p, BlockingMode::Strong, None);
                if all.is_empty() {
                    stats.distinct_partitions = seen.len() as u64;
                    return HeuristicReport { outcome: HeuristicOutcome::InCore(p), stats };
                }
                let i = rng.gen_range(0..all.len());
                all.into_iter().nth(i).expect("index in range")
            }
        };
        debug_assert!(s.members().iter().all(|&v| weight_into(game.graph(), v, s.members()) > utility[v - 1]));
        p = p.break_off(&s, game.k()).expect("sampled coalitions respect k");
        stats.applied_blocks += 1;
        if seen.insert(p.canonical_form()) {
            repeats = 0;
        } else {
            repeats += 1;
        }
        if repeats >= config.restart_threshold {
            if stats.restarts >= config.max_restarts {
                stats.distinct_partitions = seen.len() as u64;
                return HeuristicReport { outcome: HeuristicOutcome::RestartsExhausted, stats };
            }
            stats.restarts += 1;
            repeats = 0;
            p = Partition::singletons(n);
        }
    }
}

/// Uniform sampling of coalitions with size in `2..=k`.
struct Sampler {
    n: usize,
    /// `(size, cumulative count)`.
    cumulative: Vec<(usize, u128)>,
    /// `binom[m][r] = C(m, r)`.
    binom: Vec<Vec<u128>>,
}

impl Sampler {
    fn new(n: usize, k: usize) -> Sampler {
        let mut binom = vec![vec![0u128; k + 1]; n + 1];
        for m in 0..=n {
            binom[m][0] = 1;
            for r in 1..=k.min(m) {
                binom[m][r] = binom[m - 1][r - 1] + if r < m { binom[m - 1][r] } else { 0 };
            }
        }
        let mut cumulative = Vec::new();
        let mut acc = 0;
        for (s, &count) in binom[n].iter().enumerate().take(k.min(n) + 1).skip(2) {
            acc += count;
            cumulative.push((s, acc));
        }
        Sampler { n, cumulative, binom }
    }

    fn draw(&self, rng: &mut RngStream) -> Option<Vec<Agent>> {
        let total = self.cumulative.last()?.1;
        let mut r = rng.gen_range(0..total);
        let (size, before) = self
            .cumulative
            .iter()
            .scan(0u128, |prev, &(s, c)| {
                let out = (s, *prev, c);
                *prev = c;
                Some(out)
            })
            .find(|&(_, _, c)| r < c)
            .map(|(s, prev, _)| (s, prev))
            .expect("r below the total");
        r -= before;
        // Unrank the r-th size-combination of 1..=n in lexicographic order.
        let mut out = Vec::with_capacity(size);
        let mut next = 1;
        for left in (1..=size).rev() {
            loop {
                let rest = self.binom[self.n - next][left - 1];
                if r < rest {
                    out.push(next);
                    next += 1;
                    break;
                }
                r -= rest;
                next += 1;
            }
        }
        Some(out)
    }

    fn draw_blocking(
        &self,
        game: &GameInstance,
        utility: &[Weight],
        rng: &mut RngStream,
        tries: u32,
    ) -> Option<Coalition> {
        let g = game.graph();
        for _ in 0..tries {
            let s = self.draw(rng)?;
            if s.iter().all(|&v| weight_into(g, v, &s) > utility[v - 1]) {
                return Some(Coalition::from(s));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::{verify_membership, Concept, Guard};
    use crate::rational::Rational;
    use crate::workbench::fixtures::fig5_empty_core;
    use crate::workbench::random::{gnp, RngStream};

    #[test]
    fn sampler_is_uniform_over_small_space() {
        let sampler = Sampler::new(5, 3);
        let mut rng = RngStream::new(1);
        let mut counts = alloc::collections::BTreeMap::new();
        let draws = 20_000;
        for _ in 0..draws {
            *counts.entry(sampler.draw(&mut rng).unwrap()).or_insert(0u32) += 1;
        }
        // C(5,2) + C(5,3) = 20 coalitions.
        assert_eq!(counts.len(), 20);
        let expected = draws as f64 / 20.0;
        assert!(counts.values().all(|&c| (c as f64 - expected).abs() < 0.15 * expected));
        assert!(counts.keys().all(|s| s.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn triangle_needs_no_restart() {
        let game = GameInstance::new(Graph::complete(3), 3).unwrap();
        let report = core_heuristic(&game, &mut RngStream::new(4), &HeuristicConfig::default());
        assert_eq!(report.partition().unwrap().to_vecs(), vec![vec![1, 2, 3]]);
        assert_eq!(report.stats.restarts, 0);
    }

    #[test]
    fn empty_core_exhausts_restarts() {
        let game = fig5_empty_core();
        let config = HeuristicConfig { max_restarts: 5, ..HeuristicConfig::default() };
        let report = core_heuristic(&game, &mut RngStream::new(8), &config);
        assert_eq!(report.outcome, HeuristicOutcome::RestartsExhausted);
        assert_eq!(report.stats.restarts, 5);
    }

    #[test]
    fn random_graphs_succeed_and_verify() {
        let half = Rational::new(1, 2).unwrap();
        for seed in 0..100 {
            let g = gnp(12, half, &mut RngStream::new(RngStream::derive(77, 0, seed)));
            let game = GameInstance::new(g, 5).unwrap();
            let report = core_heuristic(&game, &mut RngStream::new(seed), &HeuristicConfig::default());
            let p = report.partition().expect("core found");
            assert!(verify_membership(&game, p, Concept::Core, &Guard::default()).unwrap().member);
        }
    }
}
