//! Nash stability by unilateral improving moves.

use crate::error::{Error, Result};
use crate::game::{weight_into, GameInstance};
use crate::partition::{Coalition, Partition};

use super::{default_budget, SolverStats};

/// A partition where no agent gains by moving alone to another block with
/// room for it.
///
/// Agents are tried in ascending order and target blocks in partition
/// order; the scan restarts after every move. Each move raises welfare by at
/// least twice the smallest edge weight, so the number of moves is at most
/// `|E|` on unweighted games and at most the total weight in general. The
/// budget is the larger of that bound and the default.
pub fn find_nash_stable(game: &GameInstance) -> Result<(Partition, SolverStats)> {
    let g = game.graph();
    let k = game.k();
    let budget = default_budget(game).max(g.total_weight());
    let mut p = Partition::singletons(game.n());
    let mut stats = SolverStats::default();
    let mut welfare = 0;
    'outer: loop {
        for v in g.agents() {
            let own = p.block_index(v);
            let current = game.utility(v, &p);
            for (i, s) in p.blocks().iter().enumerate() {
                if i == own || s.len() > k - 1 || weight_into(g, v, s.members()) <= current {
                    continue;
                }
                if stats.outer_iterations >= budget {
                    return Err(Error::NonConvergence { iterations: stats.outer_iterations });
                }
                let target = s.union(&Coalition::singleton(v));
                p = p.break_off(&target, k)?;
                let after = game.social_welfare(&p);
                stats.record(target, welfare, after, false);
                welfare = after;
                continue 'outer;
            }
        }
        return Ok((p, stats));
    }
}
