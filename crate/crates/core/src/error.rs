use alloc::string::String;
use core::fmt;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A precondition on the instance or the arguments does not hold.
    Domain,
    /// A partition does not cover the agents or violates the size cap.
    InvalidPartition,
    /// A solver or generator ran out of its iteration budget.
    NonConvergence,
    /// A brute-force routine refused an instance above its size guard.
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    AgentOutOfRange { agent: usize, n: usize },
    SelfLoop { agent: usize },
    DuplicateEdge { u: usize, v: usize },
    ZeroWeight { u: usize, v: usize },
    InvalidK { k: usize },
    InvalidScale,
    NotAMember { agent: usize },
    EmptyCoalition,
    CoalitionTooLarge { size: usize, k: usize },
    InvalidPartition(String),
    InvalidMatching(String),
    WeightedInput,
    Unsupported(String),
    NonConvergence { iterations: u64 },
    RetryBudget { attempts: u32 },
    TooLarge { what: &'static str, size: u128, limit: u128 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidPartition(_) => ErrorKind::InvalidPartition,
            Error::NonConvergence { .. } | Error::RetryBudget { .. } => ErrorKind::NonConvergence,
            Error::TooLarge { .. } => ErrorKind::TooLarge,
            _ => ErrorKind::Domain,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AgentOutOfRange { agent, n } => {
                write!(f, "agent {agent} is outside 1..={n}")
            }
            Error::SelfLoop { agent } => write!(f, "self-loop on agent {agent}"),
            Error::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            Error::ZeroWeight { u, v } => write!(f, "edge ({u}, {v}) has weight 0"),
            Error::InvalidK { k } => write!(f, "coalition size cap must be at least 2, got {k}"),
            Error::InvalidScale => f.write_str("weight scale must be positive"),
            Error::NotAMember { agent } => write!(f, "agent {agent} is not in the coalition"),
            Error::EmptyCoalition => f.write_str("coalition is empty"),
            Error::CoalitionTooLarge { size, k } => {
                write!(f, "coalition of size {size} exceeds the cap k = {k}")
            }
            Error::InvalidPartition(why) => write!(f, "invalid partition: {why}"),
            Error::InvalidMatching(why) => write!(f, "invalid matching: {why}"),
            Error::WeightedInput => f.write_str("this solver only accepts unweighted games"),
            Error::Unsupported(why) => write!(f, "unsupported input: {why}"),
            Error::NonConvergence { iterations } => {
                write!(f, "no convergence within {iterations} iterations")
            }
            Error::RetryBudget { attempts } => {
                write!(f, "retry budget exhausted after {attempts} attempts")
            }
            Error::TooLarge { what, size, limit } => {
                write!(f, "instance too large for {what}: {size} exceeds guard {limit}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
