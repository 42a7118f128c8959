//! Exhaustive ground truth for small instances.
//!
//! Every routine here is exponential in the number of agents and refuses
//! inputs above a [`Guard`] unless the caller supplies a looser one.

mod emptiness;
mod enumerate;
mod factorization;
mod membership;

pub use emptiness::{core_emptiness, sc_emptiness, EmptinessCertificate, Verdict};
pub use enumerate::{enumerate_partitions, opt_max_util, PartitionEnumerator};
pub use factorization::kn_matching_partition;
pub use membership::{verify_membership, Concept, Membership, Violation};

use crate::error::{Error, Result};

/// Size limits for the brute-force routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    /// Largest `n` for full partition enumeration.
    pub enumeration_n: usize,
    /// Largest `n` for the emptiness search.
    pub emptiness_n: usize,
    /// Largest number of coalitions of size `1..=k` for subset checks.
    pub subsets: u128,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { enumeration_n: 14, emptiness_n: 24, subsets: 174_436 }
    }
}

impl Guard {
    /// No limits at all.
    pub fn unlimited() -> Self {
        Guard { enumeration_n: usize::MAX, emptiness_n: usize::MAX, subsets: u128::MAX }
    }

    pub(crate) fn check_enumeration(&self, n: usize) -> Result<()> {
        check("partition enumeration", n as u128, self.enumeration_n as u128)
    }

    pub(crate) fn check_emptiness(&self, n: usize) -> Result<()> {
        check("emptiness search", n as u128, self.emptiness_n as u128)
    }

    pub(crate) fn check_subsets(&self, n: usize, k: usize) -> Result<()> {
        check("subset enumeration", coalition_count(n, k), self.subsets)
    }
}

fn check(what: &'static str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

/// Number of non-empty coalitions of size at most `k` among `n` agents.
pub fn coalition_count(n: usize, k: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for s in 1..=k.min(n) {
        c = c * (n - s + 1) as u128 / s as u128;
        total += c;
    }
    total
}

/// Calls `f` on every subset of `1..=n` with size in `sizes`, size-ascending
/// then lexicographic. Stops early when `f` returns `true`.
pub(crate) fn for_each_subset(
    n: usize,
    sizes: core::ops::RangeInclusive<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    for s in sizes {
        if s == 0 || s > n {
            continue;
        }
        let mut idx: alloc::vec::Vec<usize> = (1..=s).collect();
        loop {
            if f(&idx) {
                return true;
            }
            let mut i = s;
            while i > 0 && idx[i - 1] == n - s + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}
