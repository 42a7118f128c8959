//! Core and relaxed-core solvers for unweighted games.
//!
//! All three share one loop: find the first blocking coalition inside the
//! active set, break it off, and freeze its members when they can never take
//! part in another blocking coalition.

use alloc::vec;

use crate::error::{Error, Result};
use crate::game::{weight_into, BlockingMode, GameInstance};
use crate::graph::Weight;
use crate::partition::{Coalition, Partition};
use crate::rational::Rational;

use super::scan::first_blocking;
use super::{default_budget, SolverStats};

/// A 3-bounded partition with no strongly blocking coalition.
///
/// Coalitions that form a triangle are frozen.
pub fn find_core_k3(game: &GameInstance) -> Result<(Partition, SolverStats)> {
    require_unweighted(game)?;
    if game.k() != 3 {
        return Err(Error::Unsupported(alloc::format!(
            "the k = 3 core solver got k = {}",
            game.k()
        )));
    }
    let g = game.graph();
    run(game, BlockingMode::Strong, default_budget(game), |s| {
        let m = s.members();
        m.len() == 3 && g.weight(m[0], m[1]) > 0 && g.weight(m[0], m[2]) > 0 && g.weight(m[1], m[2]) > 0
    })
}

/// A partition with no coalition improving every member by more than `eps_a`.
///
/// Members are frozen when each has `W(v, S) >= k - 1 - eps_a`. Termination
/// is guaranteed for `eps_a >= floor(k/2) - 1`; smaller values run under the
/// default budget.
pub fn find_eps_a_core(game: &GameInstance, eps_a: Rational) -> Result<(Partition, SolverStats)> {
    find_eps_a_core_with_budget(game, eps_a, default_budget(game))
}

pub fn find_eps_a_core_with_budget(
    game: &GameInstance,
    eps_a: Rational,
    budget: u64,
) -> Result<(Partition, SolverStats)> {
    require_unweighted(game)?;
    let g = game.graph();
    let target = (game.k() as u128 - 1) * eps_a.denom() as u128;
    run(game, BlockingMode::EpsA(eps_a), budget, |s| {
        s.members().iter().all(|&v| {
            let w = weight_into(g, v, s.members()) as u128;
            w * eps_a.denom() as u128 + eps_a.numer() as u128 >= target
        })
    })
}

/// A partition with no coalition where every member's new weight exceeds
/// `eps_m` times its current utility.
///
/// Members are frozen when each has `W(v, S) >= (k - 1) / eps_m`. With
/// `eps_m >= 2` welfare strictly increases with every step.
pub fn find_eps_m_core(game: &GameInstance, eps_m: Rational) -> Result<(Partition, SolverStats)> {
    find_eps_m_core_with_budget(game, eps_m, default_budget(game))
}

pub fn find_eps_m_core_with_budget(
    game: &GameInstance,
    eps_m: Rational,
    budget: u64,
) -> Result<(Partition, SolverStats)> {
    require_unweighted(game)?;
    if eps_m.numer() == 0 {
        return Err(Error::Unsupported("eps_m must be positive".into()));
    }
    let g = game.graph();
    let target = (game.k() as u128 - 1) * eps_m.denom() as u128;
    run(game, BlockingMode::EpsM(eps_m), budget, |s| {
        s.members().iter().all(|&v| {
            weight_into(g, v, s.members()) as u128 * eps_m.numer() as u128 >= target
        })
    })
}

fn require_unweighted(game: &GameInstance) -> Result<()> {
    if game.is_unweighted() {
        Ok(())
    } else {
        Err(Error::WeightedInput)
    }
}

fn run(
    game: &GameInstance,
    mode: BlockingMode,
    budget: u64,
    freeze: impl Fn(&Coalition) -> bool,
) -> Result<(Partition, SolverStats)> {
    let n = game.n();
    let mut p = Partition::singletons(n);
    let mut active = vec![true; n];
    let mut stats = SolverStats::default();
    let mut welfare: Weight = 0;
    while let Some(s) = first_blocking(game, &p, mode, Some(&active)) {
        if stats.outer_iterations >= budget {
            return Err(Error::NonConvergence { iterations: stats.outer_iterations });
        }
        p = p.break_off(&s, game.k())?;
        let after = game.social_welfare(&p);
        let froze = freeze(&s);
        if froze {
            for &v in s.members() {
                active[v - 1] = false;
            }
        }
        stats.record(s, welfare, after, froze);
        welfare = after;
    }
    Ok((p, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::stability::{find_blocking_coalition, ScanOrder};

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

    fn stable(game: &GameInstance, p: &Partition, mode: BlockingMode) -> bool {
        find_blocking_coalition(game, p, mode, ScanOrder::Lexicographic).is_none()
    }

    #[test]
    fn triangle_forms_one_block() {
        let game = GameInstance::new(Graph::complete(3), 3).unwrap();
        let (p, stats) = find_core_k3(&game).unwrap();
        assert_eq!(p.to_vecs(), vec![vec![1, 2, 3]]);
        assert_eq!(stats.removed_agents, 3);
    }

    #[test]
    fn edgeless_stays_singletons() {
        let game = GameInstance::new(Graph::empty(4), 3).unwrap();
        assert_eq!(find_core_k3(&game).unwrap().0, Partition::singletons(4));
        let game = game.with_k(5).unwrap();
        let two = Rational::integer(2);
        assert_eq!(find_eps_m_core(&game, two).unwrap().0, Partition::singletons(4));
    }

    #[test]
    fn rejects_wrong_inputs() {
        let weighted = GameInstance::new(Graph::new(2, [(1, 2, 3)]).unwrap(), 3).unwrap();
        assert_eq!(find_core_k3(&weighted).unwrap_err(), Error::WeightedInput);
        let k4 = GameInstance::new(Graph::complete(4), 4).unwrap();
        assert!(find_core_k3(&k4).is_err());
        assert!(find_eps_m_core(&k4, Rational::ZERO).is_err());
    }

    #[test]
    fn fig1_core_partition() {
        let game = GameInstance::new(fig1(), 3).unwrap();
        let (p, stats) = find_core_k3(&game).unwrap();
        assert!(stable(&game, &p, BlockingMode::Strong));
        assert!(stats.outer_iterations <= 16 + 8 / 3);
    }

    #[test]
    fn large_eps_a_keeps_singletons() {
        let game = GameInstance::new(fig1(), 4).unwrap();
        let (p, stats) = find_eps_a_core(&game, Rational::integer(3)).unwrap();
        assert_eq!(p, Partition::singletons(8));
        assert_eq!(stats.outer_iterations, 0);
    }

    #[test]
    fn eps_a_on_k5() {
        let game = GameInstance::new(Graph::complete(5), 4).unwrap();
        let eps = Rational::integer(1);
        let (p, _) = find_eps_a_core(&game, eps).unwrap();
        assert!(stable(&game, &p, BlockingMode::EpsA(eps)));
    }

    #[test]
    fn eps_m_welfare_strictly_increases() {
        for (g, k) in [(Graph::complete(5), 4), (fig1(), 4)] {
            let game = GameInstance::new(g, k).unwrap();
            let two = Rational::integer(2);
            let (p, stats) = find_eps_m_core(&game, two).unwrap();
            assert!(stable(&game, &p, BlockingMode::EpsM(two)));
            assert!(stats.steps.iter().all(|s| s.welfare_after > s.welfare_before));
        }
    }

    #[test]
    fn small_budget_reports_non_convergence() {
        let game = GameInstance::new(Graph::complete(6), 4).unwrap();
        let err = find_eps_a_core_with_budget(&game, Rational::ZERO, 0).unwrap_err();
        assert_eq!(err, Error::NonConvergence { iterations: 0 });
    }
}
