//! Additively separable hedonic games with a cap on coalition size.
//!
//! Agents are the nodes `1..=n` of a weighted undirected graph; an agent's
//! utility is the total weight of its edges into its own coalition. The crate
//! provides the Match-and-Merge welfare approximation, constructive stability
//! solvers, brute-force oracles for small instances and a seeded simulation
//! workbench. Everything here is `no_std` with `alloc`; enable the `std`
//! feature for `std::error::Error` impls.

#![no_std]

#[macro_use]
extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod game;
pub mod graph;
pub mod matching;
pub mod mnm;
pub mod oracle;
pub mod partition;
pub mod rational;
pub mod stability;
pub mod workbench;

pub use error::{Error, ErrorKind, Result};
pub use game::{AgentGain, BlockingMode, BlockingWitness, GameInstance};
pub use graph::{Agent, Edge, Graph, Weight};
pub use matching::Matching;
pub use partition::{Coalition, Partition};
pub use rational::Rational;
