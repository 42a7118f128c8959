//! Stability membership by direct enumeration of deviations.
//!
//! These checks deliberately share nothing with the solvers: every coalition
//! of size `1..=k` is generated and tested against the definitions.

use crate::error::Result;
use crate::game::{weight_into, BlockingMode, BlockingWitness, GameInstance};
use crate::graph::{Agent, Weight};
use crate::partition::{Coalition, Partition};
use crate::rational::Rational;

use super::{for_each_subset, Guard};

/// A stability notion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concept {
    Core,
    StrictCore,
    /// Contractual strict core.
    Csc,
    EpsACore(Rational),
    EpsMCore(Rational),
    Nash,
}

/// Why a partition fails a concept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A coalition that blocks under the concept's mode. For the contractual
    /// strict core the coalition also harms nobody it leaves behind.
    Blocking(BlockingWitness),
    /// An agent that gains by joining another block.
    Move { agent: Agent, target: Coalition, gain_from: Weight, gain_to: Weight },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub violation: Option<Violation>,
}

impl Membership {
    fn from(violation: Option<Violation>) -> Self {
        Membership { member: violation.is_none(), violation }
    }
}

/// Decides whether `p` belongs to `concept` for `game`.
pub fn verify_membership(
    game: &GameInstance,
    p: &Partition,
    concept: Concept,
    guard: &Guard,
) -> Result<Membership> {
    game.validate(p)?;
    let mode = match concept {
        Concept::Nash => return Ok(Membership::from(nash_violation(game, p))),
        Concept::Core => BlockingMode::Strong,
        Concept::StrictCore | Concept::Csc => BlockingMode::Weak,
        Concept::EpsACore(e) => BlockingMode::EpsA(e),
        Concept::EpsMCore(e) => BlockingMode::EpsM(e),
    };
    guard.check_subsets(game.n(), game.k())?;
    let g = game.graph();
    let utility = game.utilities(p);
    let scale = game.weight_scale();
    let mut gains: alloc::vec::Vec<Weight> = alloc::vec::Vec::with_capacity(game.k());
    let mut found = None;
    for_each_subset(game.n(), 1..=game.k(), &mut |s| {
        gains.clear();
        gains.extend(s.iter().map(|&v| weight_into(g, v, s)));
        let pairs = s.iter().zip(&gains).map(|(&v, &w)| (w, utility[v - 1]));
        if !mode.holds(pairs, scale) {
            return false;
        }
        let c = Coalition::new(s.iter().copied());
        if concept == Concept::Csc && harms_someone_left_behind(game, p, &c) {
            return false;
        }
        let w = game.blocks(&c, p, mode).expect("size within k").expect("blocking was just checked");
        found = Some(Violation::Blocking(w));
        true
    });
    Ok(Membership::from(found))
}

fn harms_someone_left_behind(game: &GameInstance, p: &Partition, s: &Coalition) -> bool {
    let after = p.break_off(s, game.k()).expect("coalition size already checked");
    game.graph()
        .agents()
        .filter(|&v| !s.contains(v))
        .any(|v| game.utility(v, &after) < game.utility(v, p))
}

fn nash_violation(game: &GameInstance, p: &Partition) -> Option<Violation> {
    let g = game.graph();
    for v in g.agents() {
        let u = game.utility(v, p);
        for (i, s) in p.blocks().iter().enumerate() {
            if i == p.block_index(v) || s.len() + 1 > game.k() {
                continue;
            }
            let w = weight_into(g, v, s.members());
            if w > u {
                return Some(Violation::Move { agent: v, target: s.clone(), gain_from: u, gain_to: w });
            }
        }
    }
    None
}
