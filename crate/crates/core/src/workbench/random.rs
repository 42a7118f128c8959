//! Seeded random graph families.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, RngCore};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::GameInstance;
use crate::graph::{Agent, Graph};
use crate::rational::Rational;

use super::fixtures::{gen_fixture, split_call};

/// A reproducible stream of random bits: ChaCha with 8 rounds, seeded from a
/// single `u64`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub const ALGORITHM: &'static str = "chacha8";

    pub fn new(seed: u64) -> RngStream {
        RngStream { seed, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A sub-seed for item `index` of stream `family` under `master`.
    pub fn derive(master: u64, family: u64, index: u64) -> u64 {
        splitmix64(splitmix64(splitmix64(master) ^ family) ^ index)
    }

    /// `true` with probability `p` (clamped to 1), using integer arithmetic.
    pub fn bernoulli(&mut self, p: Rational) -> bool {
        if p.numer() >= p.denom() {
            return true;
        }
        self.inner.gen_ratio(p.numer() as u32, p.denom() as u32)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> core::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A graph family for simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Each pair is an edge independently with probability `p`.
    Gnp(Rational),
    /// Uniform over labelled trees.
    UniformTree,
    /// Ring lattice with `neighbors / 2` neighbours per side, each lattice
    /// edge rewired with probability `p`, redrawn until connected.
    WattsStrogatz { neighbors: usize, p: Rational },
    /// A fixed named graph; randomness is unused.
    Fixture(String),
}

impl Family {
    /// Parses `gnp(0.5)`, `uniform_tree`, `watts_strogatz(5, 0.5)` or
    /// `fixture(fig5_empty_core)`.
    pub fn parse(spec: &str) -> Result<Family> {
        let (name, args) = split_call(spec)?;
        let prob = |s: &str| -> Result<Rational> {
            let p: Rational =
                s.parse().map_err(|_| Error::Unsupported(alloc::format!("bad probability `{s}`")))?;
            if p > Rational::ONE || p.denom() > u32::MAX as u64 {
                return Err(Error::Unsupported(alloc::format!("probability `{s}` out of range")));
            }
            Ok(p)
        };
        match (name.as_str(), args.len()) {
            ("gnp", 1) => Ok(Family::Gnp(prob(&args[0])?)),
            ("uniform_tree", 0) => Ok(Family::UniformTree),
            ("watts_strogatz", 2) => Ok(Family::WattsStrogatz {
                neighbors: args[0].trim().parse().map_err(|_| {
                    Error::Unsupported(alloc::format!("bad neighbour count `{}`", args[0]))
                })?,
                p: prob(&args[1])?,
            }),
            ("fixture", 1) => {
                gen_fixture(&args[0])?;
                Ok(Family::Fixture(args[0].clone()))
            }
            _ => Err(Error::Unsupported(alloc::format!("unknown family `{spec}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gnp(p) => write!(f, "gnp({p})"),
            Family::UniformTree => f.write_str("uniform_tree"),
            Family::WattsStrogatz { neighbors, p } => write!(f, "watts_strogatz({neighbors}, {p})"),
            Family::Fixture(name) => write!(f, "fixture({name})"),
        }
    }
}

/// Connectivity retries for Watts–Strogatz.
pub const WS_RETRIES: u32 = 1000;

/// Draws an instance of `family` on `n` agents with cap `k`. Fixture
/// families ignore `n`.
pub fn gen_random(family: &Family, n: usize, k: usize, rng: &mut RngStream) -> Result<GameInstance> {
    let g = match family {
        Family::Gnp(p) => gnp(n, *p, rng),
        Family::UniformTree => uniform_tree(n, rng),
        Family::WattsStrogatz { neighbors, p } => watts_strogatz(n, *neighbors, *p, rng)?,
        Family::Fixture(name) => {
            let game = gen_fixture(name)?;
            return game.with_k(k);
        }
    };
    GameInstance::new(g, k)
}

pub fn gnp(n: usize, p: Rational, rng: &mut RngStream) -> Graph {
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.bernoulli(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::unweighted(n, pairs).expect("distinct pairs")
}

/// Decodes a uniformly random Prüfer sequence.
pub fn uniform_tree(n: usize, rng: &mut RngStream) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let code: Vec<Agent> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    let mut degree = vec![1usize; n + 1];
    for &c in &code {
        degree[c] += 1;
    }
    let mut pairs = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
        pairs.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<Agent> = (1..=n).filter(|&v| degree[v] == 1).collect();
    pairs.push((rest[0], rest[1]));
    Graph::unweighted(n, pairs).expect("Prüfer decoding yields a tree")
}

/// Connected Watts–Strogatz graph; errors after [`WS_RETRIES`] disconnected
/// draws.
pub fn watts_strogatz(n: usize, neighbors: usize, p: Rational, rng: &mut RngStream) -> Result<Graph> {
    let half = neighbors / 2;
    if n < 3 || half == 0 || 2 * half >= n {
        return Err(Error::Unsupported(alloc::format!(
            "watts_strogatz needs n >= 3 and 2 <= neighbours < n, got n = {n}, neighbours = {neighbors}"
        )));
    }
    for _ in 0..WS_RETRIES {
        let g = ws_draw(n, half, p, rng);
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::RetryBudget { attempts: WS_RETRIES })
}

fn ws_draw(n: usize, half: usize, p: Rational, rng: &mut RngStream) -> Graph {
    let mut adj = vec![false; n * n];
    let idx = |u: usize, v: usize| u * n + v;
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[idx(u, v)] = true;
            adj[idx(v, u)] = true;
        }
    }
    for j in 1..=half {
        for u in 0..n {
            let v = (u + j) % n;
            if !adj[idx(u, v)] || !rng.bernoulli(p) {
                continue;
            }
            let degree = (0..n).filter(|&w| adj[idx(u, w)]).count();
            if degree >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !adj[idx(u, w)] {
                    break w;
                }
            };
            adj[idx(u, v)] = false;
            adj[idx(v, u)] = false;
            adj[idx(u, w)] = true;
            adj[idx(w, u)] = true;
        }
    }
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let pairs: Vec<(Agent, Agent)> = pairs.filter(|&(u, v)| adj[idx(u, v)]).map(|(u, v)| (u + 1, v + 1)).collect();
    Graph::unweighted(n, pairs).expect("adjacency is symmetric and loop-free")
}
