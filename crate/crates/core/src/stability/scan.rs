//! Enumeration of blocking coalitions.
//!
//! Candidate coalitions are visited size-ascending (2 up to `k`), and within a
//! size in lexicographic order of their sorted members. Branches are cut when
//! some member could not meet the blocking inequality even if every remaining
//! slot were filled with its heaviest neighbours.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::{BlockingMode, BlockingWitness, GameInstance};
use crate::graph::{Agent, Weight};
use crate::partition::{Coalition, Partition};

/// Order in which candidate coalitions are considered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanOrder {
    /// Size-ascending, then lexicographic.
    Lexicographic,
    /// A uniformly random blocking coalition, chosen by the given seed. This
    /// is distributed as the first hit of a uniformly shuffled scan.
    Seeded(u64),
}

/// Returns a blocking coalition of `p` under `mode`, or `None` when `p` is
/// stable under `mode` against all coalitions of size `2..=k`.
pub fn find_blocking_coalition(
    game: &GameInstance,
    p: &Partition,
    mode: BlockingMode,
    order: ScanOrder,
) -> Option<BlockingWitness> {
    let found = match order {
        ScanOrder::Lexicographic => first_blocking(game, p, mode, None),
        ScanOrder::Seeded(seed) => {
            let all = all_blocking(game, p, mode, None);
            if all.is_empty() {
                None
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let i = rng.gen_range(0..all.len());
                all.into_iter().nth(i)
            }
        }
    }?;
    game.blocks(&found, p, mode).ok().flatten()
}

/// First blocking coalition inside `active` (all agents when `None`).
pub(crate) fn first_blocking(
    game: &GameInstance,
    p: &Partition,
    mode: BlockingMode,
    active: Option<&[bool]>,
) -> Option<Coalition> {
    let mut hit = None;
    scan(game, p, mode, active, &mut |s| {
        hit = Some(Coalition::new(s.iter().copied()));
        true
    });
    hit
}

/// Every blocking coalition inside `active`, in scan order.
pub(crate) fn all_blocking(
    game: &GameInstance,
    p: &Partition,
    mode: BlockingMode,
    active: Option<&[bool]>,
) -> Vec<Coalition> {
    let mut out = Vec::new();
    scan(game, p, mode, active, &mut |s| {
        out.push(Coalition::new(s.iter().copied()));
        false
    });
    out
}

struct Ctx<'a> {
    game: &'a GameInstance,
    mode: BlockingMode,
    scale: u64,
    utility: Vec<Weight>,
    /// `prefix[v-1][r]`: sum of the `r` heaviest edges at `v`.
    prefix: Vec<Vec<Weight>>,
}

impl Ctx<'_> {
    #[inline]
    fn bound(&self, v: Agent, r: usize) -> Weight {
        let p = &self.prefix[v - 1];
        p[r.min(p.len() - 1)]
    }

    #[inline]
    fn may_improve(&self, v: Agent, acc: Weight, r: usize) -> bool {
        self.mode.member_improves(acc + self.bound(v, r), self.utility[v - 1], self.scale)
    }
}

/// Calls `visit` on each blocking coalition (sorted members) until it
/// returns `true`.
pub(crate) fn scan(
    game: &GameInstance,
    p: &Partition,
    mode: BlockingMode,
    active: Option<&[bool]>,
    visit: &mut dyn FnMut(&[Agent]) -> bool,
) {
    let g = game.graph();
    let prefix = g
        .agents()
        .map(|v| {
            let mut ws: Vec<Weight> = g.neighbors(v).iter().map(|&(_, w)| w).collect();
            ws.sort_unstable_by(|a, b| b.cmp(a));
            let mut pre = vec![0];
            let mut acc = 0;
            for w in ws {
                acc += w;
                pre.push(acc);
            }
            pre
        })
        .collect();
    let ctx = Ctx { game, mode, scale: game.weight_scale(), utility: game.utilities(p), prefix };
    let k = game.k().min(g.n());
    for size in 2..=k {
        let cands: Vec<Agent> = g
            .agents()
            .filter(|&v| active.is_none_or(|a| a[v - 1]))
            .filter(|&v| ctx.may_improve(v, 0, size - 1))
            .collect();
        if cands.len() < size {
            continue;
        }
        let mut members = Vec::with_capacity(size);
        let mut acc = Vec::with_capacity(size);
        if dfs(&ctx, &cands, 0, size, &mut members, &mut acc, visit) {
            return;
        }
    }
}

fn dfs(
    ctx: &Ctx<'_>,
    cands: &[Agent],
    from: usize,
    size: usize,
    members: &mut Vec<Agent>,
    acc: &mut Vec<Weight>,
    visit: &mut dyn FnMut(&[Agent]) -> bool,
) -> bool {
    let g = ctx.game.graph();
    let need = size - members.len();
    if cands.len() - from < need {
        return false;
    }
    for i in from..=cands.len() - need {
        let c = cands[i];
        let mut own = 0;
        for (j, &m) in members.iter().enumerate() {
            let w = g.weight(m, c);
            acc[j] += w;
            own += w;
        }
        members.push(c);
        acc.push(own);
        let remaining = size - members.len();
        let viable = members.iter().zip(acc.iter()).all(|(&m, &a)| ctx.may_improve(m, a, remaining));
        let stop = if !viable {
            false
        } else if remaining == 0 {
            let pairs = members.iter().zip(acc.iter()).map(|(&m, &a)| (a, ctx.utility[m - 1]));
            ctx.mode.holds(pairs, ctx.scale) && visit(members)
        } else {
            dfs(ctx, cands, i + 1, size, members, acc, visit)
        };
        members.pop();
        acc.pop();
        for (j, &m) in members.iter().enumerate() {
            acc[j] -= g.weight(m, c);
        }
        if stop {
            return true;
        }
    }
    false
}
