//! Enumeration of `k`-bounded set partitions by restricted growth strings.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::game::GameInstance;
use crate::graph::Weight;
use crate::partition::{Coalition, Partition};

use super::Guard;

/// Iterator over every partition of `1..=n` into blocks of size at most `k`.
///
/// Agent `i` carries a block label no larger than one plus the largest label
/// among agents `1..i`; strings are produced in lexicographic order, so the
/// first partition is the one with the fewest, earliest-filled blocks.
#[derive(Debug, Clone)]
pub struct PartitionEnumerator {
    n: usize,
    k: usize,
    labels: Vec<usize>,
    counts: Vec<usize>,
    /// `used[i]`: number of distinct labels among agents `0..=i`.
    used: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionEnumerator {
    /// Refuses `n` above the guard.
    pub fn new(n: usize, k: usize, guard: &Guard) -> Result<Self> {
        guard.check_enumeration(n)?;
        Ok(Self::unguarded(n, k))
    }

    pub fn unguarded(n: usize, k: usize) -> Self {
        PartitionEnumerator {
            n,
            k,
            labels: vec![0; n],
            counts: vec![0; n],
            used: vec![0; n],
            started: false,
            done: k == 0 && n > 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn place(&mut self, i: usize, label: usize) {
        self.labels[i] = label;
        self.counts[label] += 1;
        let before = if i == 0 { 0 } else { self.used[i - 1] };
        self.used[i] = before.max(label + 1);
    }

    fn fill_from(&mut self, start: usize) {
        for i in start..self.n {
            let limit = if i == 0 { 0 } else { self.used[i - 1] };
            let label = (0..=limit).find(|&l| self.counts[l] < self.k).expect("a new block always fits");
            self.place(i, label);
        }
    }

    fn advance(&mut self) -> bool {
        for i in (1..self.n).rev() {
            let old = self.labels[i];
            self.counts[old] -= 1;
            let limit = self.used[i - 1];
            if let Some(l) = (old + 1..=limit).find(|&l| self.counts[l] < self.k) {
                self.place(i, l);
                self.fill_from(i + 1);
                return true;
            }
        }
        false
    }

    fn current(&self) -> Partition {
        let blocks_used = self.used.last().copied().unwrap_or(0);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); blocks_used];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l].push(i + 1);
        }
        Partition::from_blocks_unchecked(self.n, blocks.into_iter().map(Coalition::from).collect())
    }
}

impl Iterator for PartitionEnumerator {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        if self.n == 0 {
            self.done = true;
        }
        Some(self.current())
    }
}

/// All `k`-bounded partitions of `1..=n`.
pub fn enumerate_partitions(n: usize, k: usize, guard: &Guard) -> Result<PartitionEnumerator> {
    PartitionEnumerator::new(n, k, guard)
}

/// A welfare-maximising `k`-bounded partition; the first one in enumeration
/// order among ties.
pub fn opt_max_util(game: &GameInstance, guard: &Guard) -> Result<(Partition, Weight)> {
    let mut best: Option<(Partition, Weight)> = None;
    for p in PartitionEnumerator::new(game.n(), game.k(), guard)? {
        let w = game.social_welfare(&p);
        if best.as_ref().is_none_or(|(_, b)| w > *b) {
            best = Some((p, w));
        }
    }
    Ok(best.expect("at least one partition exists"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use alloc::collections::BTreeSet;
    use proptest::prelude::*;

    /// `B(n, k) = Σ_{j=1..k} C(n-1, j-1) · B(n-j, k)`, `B(0, k) = 1`.
    fn restricted_bell(n: usize, k: usize) -> u128 {
        let mut b = vec![0u128; n + 1];
        b[0] = 1;
        for m in 1..=n {
            let mut c = 1u128;
            for j in 1..=k.min(m) {
                if j > 1 {
                    c = c * (m - j + 1) as u128 / (j - 1) as u128;
                }
                b[m] += c * b[m - j];
            }
        }
        b[n]
    }

    #[test]
    fn small_counts() {
        assert_eq!(PartitionEnumerator::unguarded(3, 3).count(), 5);
        assert_eq!(PartitionEnumerator::unguarded(3, 1).count(), 1);
        assert_eq!(restricted_bell(9, 3) as usize, PartitionEnumerator::unguarded(9, 3).count());
        assert_eq!(PartitionEnumerator::unguarded(1, 2).count(), 1);
    }

    #[test]
    fn counts_match_recurrence() {
        for n in 1..=10 {
            for k in 1..=n {
                let parts: Vec<Partition> = PartitionEnumerator::unguarded(n, k).collect();
                assert_eq!(parts.len() as u128, restricted_bell(n, k), "n={n} k={k}");
                assert!(parts.iter().all(|p| p.max_block_size() <= k));
                let distinct: BTreeSet<Vec<u8>> = parts.iter().map(|p| p.canonical_form()).collect();
                assert_eq!(distinct.len(), parts.len());
            }
        }
        for k in [2, 5, 12] {
            assert_eq!(PartitionEnumerator::unguarded(12, k).count() as u128, restricted_bell(12, k));
        }
    }

    #[test]
    fn guard_refuses_large_n() {
        assert!(enumerate_partitions(15, 3, &Guard::default()).is_err());
        assert!(enumerate_partitions(14, 3, &Guard::default()).is_ok());
    }

    #[test]
    fn optimum_of_complete_graphs() {
        for k in 2..=4 {
            let game = GameInstance::new(Graph::complete(2 * k), k).unwrap();
            let (p, w) = opt_max_util(&game, &Guard::default()).unwrap();
            assert_eq!(w, 2 * (k * (k - 1)) as Weight);
            assert_eq!(p.len(), 2);
        }
        let game = GameInstance::new(Graph::empty(4), 3).unwrap();
        assert_eq!(opt_max_util(&game, &Guard::default()).unwrap().1, 0);
    }

    proptest! {
        #[test]
        fn optimum_dominates_samples(n in 2usize..=7, k in 2usize..=4, seed in any::<u64>(), skip in 0usize..50) {
            let pairs: Vec<(usize, usize)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .filter(|&(u, v)| (seed >> ((u * 7 + v) % 64)) & 1 == 1)
                .collect();
            let game = GameInstance::new(Graph::unweighted(n, pairs).unwrap(), k).unwrap();
            let (_, best) = opt_max_util(&game, &Guard::default()).unwrap();
            for p in PartitionEnumerator::unguarded(n, k).skip(skip).step_by(3) {
                prop_assert!(game.social_welfare(&p) <= best);
            }
        }
    }
}
