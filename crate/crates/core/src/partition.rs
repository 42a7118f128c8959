//! Coalitions, partitions, and the break-off operation.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::Agent;

/// A set of agents, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coalition(Vec<Agent>);

impl Coalition {
    pub fn new<I: IntoIterator<Item = Agent>>(agents: I) -> Coalition {
        let mut v: Vec<Agent> = agents.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Coalition(v)
    }

    pub fn singleton(agent: Agent) -> Coalition {
        Coalition(vec![agent])
    }

    pub fn members(&self) -> &[Agent] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, agent: Agent) -> bool {
        self.0.binary_search(&agent).is_ok()
    }

    pub fn union(&self, other: &Coalition) -> Coalition {
        Coalition::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn min(&self) -> Option<Agent> {
        self.0.first().copied()
    }

    pub fn into_vec(self) -> Vec<Agent> {
        self.0
    }
}

impl From<Vec<Agent>> for Coalition {
    fn from(v: Vec<Agent>) -> Self {
        Coalition::new(v)
    }
}

impl<const N: usize> From<[Agent; N]> for Coalition {
    fn from(v: [Agent; N]) -> Self {
        Coalition::new(v)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// A disjoint cover of `1..=n` by non-empty coalitions.
///
/// Blocks are stored in canonical order: each block sorted, blocks ordered by
/// their smallest member. Equality is therefore equality of set partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Coalition>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new<B, I>(n: usize, blocks: I) -> Result<Partition>
    where
        I: IntoIterator<Item = B>,
        B: Into<Coalition>,
    {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for block in blocks {
            let block: Coalition = block.into();
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".to_string()));
            }
            for &a in block.members() {
                if a == 0 || a > n {
                    return Err(Error::InvalidPartition(alloc::format!(
                        "agent {a} outside 1..={n}"
                    )));
                }
                if seen[a - 1] {
                    return Err(Error::InvalidPartition(alloc::format!(
                        "agent {a} appears in two blocks"
                    )));
                }
                seen[a - 1] = true;
            }
            out.push(block);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(alloc::format!(
                "agent {} is not covered",
                missing + 1
            )));
        }
        Ok(Partition::from_blocks_unchecked(n, out))
    }

    pub(crate) fn from_blocks_unchecked(n: usize, mut blocks: Vec<Coalition>) -> Partition {
        blocks.sort_unstable_by_key(|b| b.min());
        let mut block_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for &a in b.members() {
                block_of[a - 1] = i;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn singletons(n: usize) -> Partition {
        Partition::from_blocks_unchecked(n, (1..=n).map(Coalition::singleton).collect())
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_index(&self, agent: Agent) -> usize {
        self.block_of[agent - 1]
    }

    pub fn block_of(&self, agent: Agent) -> &Coalition {
        &self.blocks[self.block_of[agent - 1]]
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Coalition::len).max().unwrap_or(0)
    }

    /// Fails unless every block has at most `k` members.
    pub fn check_bounded(&self, k: usize) -> Result<()> {
        match self.blocks.iter().find(|b| b.len() > k) {
            Some(b) => Err(Error::InvalidPartition(alloc::format!(
                "block {b} has {} members, cap is {k}",
                b.len()
            ))),
            None => Ok(()),
        }
    }

    /// The partition after `s` breaks off: `{s} ∪ {C \ s : C ∈ P}`, empty
    /// residues dropped.
    pub fn break_off(&self, s: &Coalition, k: usize) -> Result<Partition> {
        if s.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        if s.len() > k {
            return Err(Error::CoalitionTooLarge { size: s.len(), k });
        }
        let n = self.n();
        if let Some(&a) = s.members().iter().find(|&&a| a == 0 || a > n) {
            return Err(Error::AgentOutOfRange { agent: a, n });
        }
        let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
        for b in &self.blocks {
            let rest: Vec<Agent> =
                b.members().iter().copied().filter(|&a| !s.contains(a)).collect();
            if !rest.is_empty() {
                blocks.push(Coalition(rest));
            }
        }
        blocks.push(s.clone());
        Ok(Partition::from_blocks_unchecked(n, blocks))
    }

    /// Injective byte encoding: agents as big-endian `u32`, blocks separated
    /// by a zero word, blocks in canonical order.
    pub fn canonical_form(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 * (self.n() + self.blocks.len()));
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.extend_from_slice(&0u32.to_be_bytes());
            }
            for &a in b.members() {
                out.extend_from_slice(&(a as u32).to_be_bytes());
            }
        }
        out
    }

    /// Inverse of [`Partition::canonical_form`]; `n` is the number of agents
    /// encoded.
    pub fn from_canonical(bytes: &[u8]) -> Result<Partition> {
        if !bytes.len().is_multiple_of(4) {
            return Err(Error::InvalidPartition("truncated canonical form".to_string()));
        }
        let mut blocks: Vec<Vec<Agent>> = vec![Vec::new()];
        for chunk in bytes.chunks_exact(4) {
            let word = u32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]) as Agent;
            if word == 0 {
                blocks.push(Vec::new());
            } else {
                blocks.last_mut().expect("non-empty").push(word);
            }
        }
        if bytes.is_empty() {
            blocks.clear();
        }
        let n = blocks.iter().map(Vec::len).sum();
        Partition::new(n, blocks)
    }

    /// Blocks as plain sorted vectors.
    pub fn to_vecs(&self) -> Vec<Vec<Agent>> {
        self.blocks.iter().map(|b| b.members().to_vec()).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}
