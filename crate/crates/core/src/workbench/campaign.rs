//! Simulation campaigns: many heuristic runs over random families.
//!
//! Instance `i` of family `f` draws everything from one seed,
//! `RngStream::derive(master_seed, f, i)`: first the graph, then the
//! heuristic's choices. Results depend only on the configuration, never on
//! how instances are scheduled.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::ErrorKind;
use crate::oracle::{verify_membership, Concept, Guard};

use super::heuristic::{core_heuristic, HeuristicConfig, HeuristicOutcome};
use super::random::{gen_random, Family, RngStream};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub master_seed: u64,
    pub n: usize,
    pub k: usize,
    /// Instances per family.
    pub instances: u64,
    pub families: Vec<Family>,
    pub heuristic: HeuristicConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceOutcome {
    /// Core partition found and confirmed by the membership oracle.
    Success,
    /// Restarts exhausted.
    Failure,
    /// The heuristic claimed success but the oracle found a blocking coalition.
    Refuted,
    /// The instance could not be generated.
    GenerationError(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceResult {
    pub family: usize,
    pub index: u64,
    pub seed: u64,
    pub outcome: InstanceOutcome,
    pub restarts: u32,
    pub applied_blocks: u64,
    pub edges: usize,
    /// `false` when the oracle guard refused the instance.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySummary {
    pub family: String,
    pub instances: u64,
    pub successes: u64,
    pub failures: u64,
    /// Total restarts over all instances.
    pub restarts: u64,
    /// Instances that needed at least one restart.
    pub instances_restarted: u64,
    pub mean_applied_blocks: f64,
    /// Seeds of every instance that did not succeed.
    pub counterexample_seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignReport {
    pub master_seed: u64,
    pub n: usize,
    pub k: usize,
    pub instances_per_family: u64,
    pub families: Vec<FamilySummary>,
}

impl CampaignReport {
    pub fn total_instances(&self) -> u64 {
        self.families.iter().map(|f| f.instances).sum()
    }

    pub fn total_successes(&self) -> u64 {
        self.families.iter().map(|f| f.successes).sum()
    }
}

pub fn run_instance(config: &CampaignConfig, family: usize, index: u64) -> InstanceResult {
    let seed = RngStream::derive(config.master_seed, family as u64, index);
    let mut rng = RngStream::new(seed);
    let mut result = InstanceResult {
        family,
        index,
        seed,
        outcome: InstanceOutcome::Failure,
        restarts: 0,
        applied_blocks: 0,
        edges: 0,
        verified: false,
    };
    let game = match gen_random(&config.families[family], config.n, config.k, &mut rng) {
        Ok(game) => game,
        Err(e) => {
            result.outcome = InstanceOutcome::GenerationError(e.to_string());
            return result;
        }
    };
    result.edges = game.graph().edge_count();
    let report = core_heuristic(&game, &mut rng, &config.heuristic);
    result.restarts = report.stats.restarts;
    result.applied_blocks = report.stats.applied_blocks;
    if let HeuristicOutcome::InCore(p) = &report.outcome {
        match verify_membership(&game, p, Concept::Core, &Guard::default()) {
            Ok(m) => {
                result.verified = true;
                result.outcome =
                    if m.member { InstanceOutcome::Success } else { InstanceOutcome::Refuted };
            }
            Err(e) if e.kind() == ErrorKind::TooLarge => result.outcome = InstanceOutcome::Success,
            Err(e) => result.outcome = InstanceOutcome::GenerationError(e.to_string()),
        }
    }
    result
}

/// All `(family, index)` pairs of a campaign, in report order.
pub fn instance_ids(config: &CampaignConfig) -> impl Iterator<Item = (usize, u64)> + '_ {
    (0..config.families.len()).flat_map(move |f| (0..config.instances).map(move |i| (f, i)))
}

/// Folds instance results (in any order) into the report.
pub fn aggregate(config: &CampaignConfig, results: &[InstanceResult]) -> CampaignReport {
    let mut sorted: Vec<&InstanceResult> = results.iter().collect();
    sorted.sort_by_key(|r| (r.family, r.index));
    let families = config
        .families
        .iter()
        .enumerate()
        .map(|(f, family)| {
            let mine: Vec<&&InstanceResult> = sorted.iter().filter(|r| r.family == f).collect();
            let successes =
                mine.iter().filter(|r| r.outcome == InstanceOutcome::Success).count() as u64;
            let applied: u64 = mine.iter().map(|r| r.applied_blocks).sum();
            FamilySummary {
                family: family.to_string(),
                instances: mine.len() as u64,
                successes,
                failures: mine.len() as u64 - successes,
                restarts: mine.iter().map(|r| r.restarts as u64).sum(),
                instances_restarted: mine.iter().filter(|r| r.restarts > 0).count() as u64,
                mean_applied_blocks: if mine.is_empty() {
                    0.0
                } else {
                    applied as f64 / mine.len() as f64
                },
                counterexample_seeds: mine
                    .iter()
                    .filter(|r| r.outcome != InstanceOutcome::Success)
                    .map(|r| r.seed)
                    .collect(),
            }
        })
        .collect();
    CampaignReport {
        master_seed: config.master_seed,
        n: config.n,
        k: config.k,
        instances_per_family: config.instances,
        families,
    }
}

/// Runs every instance in order on the current thread.
pub fn run_campaign(config: &CampaignConfig) -> CampaignReport {
    let results: Vec<InstanceResult> =
        instance_ids(config).map(|(f, i)| run_instance(config, f, i)).collect();
    aggregate(config, &results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn config(instances: u64) -> CampaignConfig {
        CampaignConfig {
            master_seed: 42,
            n: 12,
            k: 4,
            instances,
            families: vec![
                Family::Gnp(Rational::new(1, 2).unwrap()),
                Family::UniformTree,
                Family::WattsStrogatz { neighbors: 5, p: Rational::new(1, 2).unwrap() },
            ],
            heuristic: HeuristicConfig::default(),
        }
    }

    #[test]
    fn deterministic_and_successful() {
        let a = run_campaign(&config(30));
        assert_eq!(a, run_campaign(&config(30)));
        assert_eq!(a.total_instances(), 90);
        assert_eq!(a.total_successes(), 90);
    }

    #[test]
    fn order_of_results_is_irrelevant() {
        let cfg = config(5);
        let mut results: Vec<InstanceResult> =
            instance_ids(&cfg).map(|(f, i)| run_instance(&cfg, f, i)).collect();
        let forward = aggregate(&cfg, &results);
        results.reverse();
        assert_eq!(forward, aggregate(&cfg, &results));
    }

    #[test]
    fn zero_instances() {
        let report = run_campaign(&config(0));
        assert_eq!(report.total_instances(), 0);
        assert!(report.families.iter().all(|f| f.instances == 0 && f.mean_applied_blocks == 0.0));
    }

    #[test]
    fn empty_core_fixture_fails_with_seeds() {
        let cfg = CampaignConfig {
            k: 3,
            instances: 2,
            families: vec![Family::Fixture("fig5_empty_core".into())],
            heuristic: HeuristicConfig { max_restarts: 3, ..HeuristicConfig::default() },
            ..config(0)
        };
        let report = run_campaign(&cfg);
        assert_eq!(report.families[0].successes, 0);
        assert_eq!(report.families[0].counterexample_seeds.len(), 2);
        assert_eq!(report.families[0].restarts, 6);
    }
}
