//! Constructive stability solvers.
//!
//! Every solver starts from singletons and repeatedly applies an improving
//! deviation until none is left, restarting its scan from the top after each
//! applied step. `outer_iterations` counts applied steps; the final scan that
//! finds nothing is not counted. All loops run under an iteration budget and
//! report [`Error::NonConvergence`](crate::Error::NonConvergence) when it is
//! exhausted.

mod core_solvers;
mod merge;
mod nash;
mod scan;

use alloc::vec::Vec;

use crate::game::GameInstance;
use crate::graph::Weight;
use crate::partition::Coalition;

pub use core_solvers::{
    find_core_k3, find_eps_a_core, find_eps_a_core_with_budget, find_eps_m_core,
    find_eps_m_core_with_budget,
};
pub use merge::{arbmax, find_csc, MergeOrder};
pub use nash::find_nash_stable;
pub use scan::{find_blocking_coalition, ScanOrder};

pub(crate) use scan::all_blocking;

/// One applied deviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppliedStep {
    /// The coalition that formed.
    pub coalition: Coalition,
    pub welfare_before: Weight,
    pub welfare_after: Weight,
    /// Whether the step removed agents from the active set.
    pub froze: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolverStats {
    pub outer_iterations: u64,
    /// `u(P)` after each applied step.
    pub welfare_trajectory: Vec<Weight>,
    /// Agents removed from the active set.
    pub removed_agents: usize,
    pub steps: Vec<AppliedStep>,
}

impl SolverStats {
    pub(crate) fn record(&mut self, coalition: Coalition, before: Weight, after: Weight, froze: bool) {
        self.outer_iterations += 1;
        self.welfare_trajectory.push(after);
        if froze {
            self.removed_agents += coalition.len();
        }
        self.steps.push(AppliedStep {
            coalition,
            welfare_before: before,
            welfare_after: after,
            froze,
        });
    }
}

/// Default step budget: `10 * (|E| + n)`.
pub fn default_budget(game: &GameInstance) -> u64 {
    10 * (game.graph().edge_count() as u64 + game.n() as u64)
}

/// First blocking coalition with every member in `active`.
pub(crate) fn first_blocking_in(
    game: &GameInstance,
    p: &crate::partition::Partition,
    mode: crate::game::BlockingMode,
    active: &[bool],
) -> Option<Coalition> {
    scan::first_blocking(game, p, mode, Some(active))
}
