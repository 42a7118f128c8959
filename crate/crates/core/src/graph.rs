//! Weighted undirected social graphs over agents `1..=n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Agents are numbered from 1.
pub type Agent = usize;

/// Edge weights are exact non-negative integers (already scaled).
pub type Weight = u64;

const DENSE_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: Agent,
    pub v: Agent,
    pub weight: Weight,
}

impl Edge {
    /// Endpoints ordered so that the first is the smaller id.
    pub fn endpoints(&self) -> (Agent, Agent) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// An immutable simple graph with positive integer weights.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(Agent, Weight)>>,
    dense: Option<Vec<Weight>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates, zero weights and
    /// endpoints outside `1..=n`. Edge insertion order is preserved.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Agent, Agent, Weight)>,
    {
        let mut adjacency: Vec<Vec<(Agent, Weight)>> = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v, weight) in edges {
            for a in [u, v] {
                if a == 0 || a > n {
                    return Err(Error::AgentOutOfRange { agent: a, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { agent: u });
            }
            if weight == 0 {
                return Err(Error::ZeroWeight { u, v });
            }
            adjacency[u - 1].push((v, weight));
            adjacency[v - 1].push((u, weight));
            list.push(Edge { u, v, weight });
        }
        for (i, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::DuplicateEdge { u: i + 1, v: w[0].0 });
            }
        }
        let dense = (n <= DENSE_LIMIT).then(|| {
            let mut m = vec![0; n * n];
            for e in &list {
                m[(e.u - 1) * n + (e.v - 1)] = e.weight;
                m[(e.v - 1) * n + (e.u - 1)] = e.weight;
            }
            m
        });
        Ok(Graph { n, edges: list, adjacency, dense })
    }

    /// Unit-weight graph from a list of pairs.
    pub fn unweighted<I>(n: usize, pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Agent, Agent)>,
    {
        Graph::new(n, pairs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, core::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Graph {
        let pairs = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Graph::unweighted(n, pairs).expect("complete graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn agents(&self) -> core::ops::RangeInclusive<Agent> {
        1..=self.n
    }

    /// Weight of edge `(u, v)`, or 0 when the agents are not adjacent.
    #[inline]
    pub fn weight(&self, u: Agent, v: Agent) -> Weight {
        match &self.dense {
            Some(m) => m[(u - 1) * self.n + (v - 1)],
            None => {
                let nbrs = &self.adjacency[u - 1];
                match nbrs.binary_search_by_key(&v, |&(x, _)| x) {
                    Ok(i) => nbrs[i].1,
                    Err(_) => 0,
                }
            }
        }
    }

    /// Neighbours of `v` with edge weights, sorted by agent id.
    pub fn neighbors(&self, v: Agent) -> &[(Agent, Weight)] {
        &self.adjacency[v - 1]
    }

    pub fn degree(&self, v: Agent) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn max_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }

    /// True when every edge has weight 1.
    pub fn has_unit_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1)
    }

    /// Sum of the `count` heaviest edges at `v`: an upper bound on `W(v, S)`
    /// over coalitions of size `count + 1`.
    pub fn top_incident_weight(&self, v: Agent, count: usize) -> Weight {
        let mut ws: Vec<Weight> = self.adjacency[v - 1].iter().map(|&(_, w)| w).collect();
        ws.sort_unstable_by(|a, b| b.cmp(a));
        ws.iter().take(count).sum()
    }

    /// Whether the subgraph induced by `members` is connected.
    pub fn induces_connected(&self, members: &[Agent]) -> bool {
        if members.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; members.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for (j, &b) in members.iter().enumerate() {
                if !seen[j] && self.weight(members[i], b) > 0 {
                    seen[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            }
        }
        reached == members.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![1usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &self.adjacency[v - 1] {
                if !seen[u - 1] {
                    seen[u - 1] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1, 1)]), Err(Error::SelfLoop { agent: 1 }));
        assert_eq!(Graph::new(3, [(1, 2, 0)]), Err(Error::ZeroWeight { u: 1, v: 2 }));
        assert_eq!(
            Graph::new(3, [(1, 4, 1)]),
            Err(Error::AgentOutOfRange { agent: 4, n: 3 })
        );
        assert!(matches!(
            Graph::new(3, [(1, 2, 1), (2, 1, 3)]),
            Err(Error::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn weights_are_symmetric() {
        let g = Graph::new(4, [(1, 2, 5), (3, 2, 7)]).unwrap();
        assert_eq!(g.weight(2, 3), 7);
        assert_eq!(g.weight(3, 2), 7);
        assert_eq!(g.weight(1, 4), 0);
        assert_eq!(g.top_incident_weight(2, 1), 7);
        assert_eq!(g.top_incident_weight(2, 5), 12);
        assert!(!g.is_connected());
        assert!(g.induces_connected(&[1, 2, 3]));
        assert!(!g.induces_connected(&[1, 3]));
    }

    #[test]
    fn complete_graph_counts() {
        let g = Graph::complete(6);
        assert_eq!(g.edge_count(), 15);
        assert!(g.has_unit_weights());
        assert!(g.is_connected());
    }
}
