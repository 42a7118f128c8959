//! Multi-threaded campaign runner.
//!
//! Instances are handed out through a shared counter and the results are
//! folded with [`aggregate`], which sorts them, so the report does not depend
//! on the worker count or on scheduling.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use hedonic_core::workbench::campaign::{aggregate, instance_ids};
use hedonic_core::workbench::{run_instance, CampaignConfig, CampaignReport, InstanceResult};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "HEDONIC_WORKERS";

/// Worker count from `HEDONIC_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

pub fn run_campaign_parallel(config: &CampaignConfig, workers: usize) -> CampaignReport {
    let results = run_instances(config, workers);
    aggregate(config, &results)
}

/// Every instance result, in unspecified order.
pub fn run_instances(config: &CampaignConfig, workers: usize) -> Vec<InstanceResult> {
    let ids: Vec<(usize, u64)> = instance_ids(config).collect();
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Vec::with_capacity(ids.len()));
    std::thread::scope(|scope| {
        for _ in 0..workers.clamp(1, ids.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(f, idx)) = ids.get(i) else { break };
                let r = run_instance(config, f, idx);
                out.lock().expect("no worker panicked").push(r);
            });
        }
    });
    out.into_inner().expect("no worker panicked")
}

#[cfg(test)]
mod tests {
    use super::*;
    use hedonic_core::workbench::{run_campaign, Family, HeuristicConfig};

    #[test]
    fn worker_count_does_not_change_the_report() {
        let config = CampaignConfig {
            master_seed: 9,
            n: 10,
            k: 4,
            instances: 6,
            families: vec![Family::parse("gnp(0.5)").unwrap(), Family::UniformTree],
            heuristic: HeuristicConfig::default(),
        };
        let serial = run_campaign(&config);
        for workers in [1, 3, 8] {
            assert_eq!(run_campaign_parallel(&config, workers), serial);
        }
    }
}
