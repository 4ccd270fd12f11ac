//! Maximum-weight clique search.
//!
//! The exact solver is a vertex-ordered branch and bound in the style of
//! Cliquer: vertices are ordered, and `c[i]` holds the best clique weight
//! among the vertices from position `i` to the end. Position `i` is solved
//! after all later positions, and `c` prunes every branch whose first
//! candidate cannot lift the current clique past the incumbent.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {node} out of range (graph has {nodes} nodes)")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },
}

/// Undirected graph with node weights, adjacency stored as bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    weights: Vec<u64>,
    rows: Vec<Vec<u64>>,
    edges: usize,
}

impl WeightedGraph {
    pub fn new(weights: Vec<u64>) -> Self {
        let n = weights.len();
        let words = n.div_ceil(64);
        WeightedGraph {
            weights,
            rows: vec![vec![0; words]; n],
            edges: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let nodes = self.node_count();
        for node in [u, v] {
            if node >= nodes {
                return Err(GraphError::NodeOutOfRange { node, nodes });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { node: u });
        }
        if !self.is_adjacent(u, v) {
            self.rows[u][v / 64] |= 1 << (v % 64);
            self.rows[v][u / 64] |= 1 << (u % 64);
            self.edges += 1;
        }
        Ok(())
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(move |&u| self.is_adjacent(v, u))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.node_count();
        (0..n).flat_map(move |u| ((u + 1)..n).filter(move |&v| self.is_adjacent(u, v)).map(move |v| (u, v)))
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(k, &u)| {
            u < self.node_count() && members[k + 1..].iter().all(|&v| v != u && self.is_adjacent(u, v))
        })
    }

    pub fn total_weight(&self, members: &[usize]) -> u64 {
        members.iter().map(|&v| self.weights[v]).sum()
    }

    /// Subgraph induced by `keep` (in that order).
    pub fn induced(&self, keep: &[usize]) -> WeightedGraph {
        let mut g = WeightedGraph::new(keep.iter().map(|&v| self.weights[v]).collect());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.is_adjacent(u, v) {
                    let _ = g.add_edge(i, j);
                }
            }
        }
        g
    }
}

/// Source of elapsed time for the search budget.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances; time limits never trigger.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            time_limit: Some(Duration::from_secs(60)),
            node_limit: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            time_limit: None,
            node_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Sorted node indices.
    pub members: Vec<usize>,
    pub weight: u64,
    /// Set only by an exact run that finished within budget.
    pub optimal: bool,
    pub stats: SearchStats,
}

const CLOCK_INTERVAL: u64 = 4096;

struct Exact<'a> {
    weights: Vec<u64>,
    adj: Vec<Vec<u64>>,
    c: Vec<u64>,
    order: Vec<usize>,
    best_weight: u64,
    best: Vec<u32>,
    current: Vec<u32>,
    nodes: u64,
    budget: Budget,
    clock: &'a dyn Clock,
    aborted: bool,
}

impl Exact<'_> {
    #[inline]
    fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize][b as usize / 64] >> (b % 64) & 1 == 1
    }

    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.node_limit.is_some_and(|l| self.nodes > l) {
            self.aborted = true;
        } else if self.nodes.is_multiple_of(CLOCK_INTERVAL) {
            if let Some(limit) = self.budget.time_limit {
                if self.clock.elapsed() >= limit {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    fn expand(&mut self, candidates: &[u32], weight: u64) {
        if candidates.is_empty() {
            if weight > self.best_weight {
                self.best_weight = weight;
                self.best.clone_from(&self.current);
            }
            return;
        }
        let mut remaining: u64 = candidates.iter().map(|&v| self.weights[v as usize]).sum();
        for (k, &v) in candidates.iter().enumerate() {
            if weight + remaining <= self.best_weight {
                return;
            }
            if weight + self.c[v as usize] <= self.best_weight {
                return;
            }
            if self.out_of_budget() {
                return;
            }
            let next: Vec<u32> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&u| self.adjacent(v, u))
                .collect();
            self.current.push(v);
            self.expand(&next, weight + self.weights[v as usize]);
            self.current.pop();
            if self.aborted {
                return;
            }
            remaining -= self.weights[v as usize];
        }
    }
}

/// Vertex order used by the exact solver: weight descending, then degree
/// descending, then index ascending.
pub fn search_order(g: &WeightedGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    let degrees: Vec<usize> = (0..g.node_count()).map(|v| g.degree(v)).collect();
    order.sort_by(|&a, &b| {
        g.weight(b)
            .cmp(&g.weight(a))
            .then(degrees[b].cmp(&degrees[a]))
            .then(a.cmp(&b))
    });
    order
}

/// Exact maximum-weight clique within `budget`.
///
/// Among equal-weight optima the first one reached in search order is
/// returned. When the budget runs out the best clique seen so far comes back
/// with `optimal == false`.
pub fn max_weight_clique_exact(g: &WeightedGraph, budget: Budget, clock: &dyn Clock) -> CliqueResult {
    let n = g.node_count();
    let order = search_order(g);
    let words = n.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; n];
    for (pa, &a) in order.iter().enumerate() {
        for (pb, &b) in order.iter().enumerate() {
            if g.is_adjacent(a, b) {
                adj[pa][pb / 64] |= 1 << (pb % 64);
            }
        }
    }
    let mut s = Exact {
        weights: order.iter().map(|&v| g.weight(v)).collect(),
        adj,
        c: vec![0; n],
        order,
        best_weight: 0,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
        clock,
        aborted: false,
    };

    for i in (0..n as u32).rev() {
        let candidates: Vec<u32> = ((i + 1)..n as u32).filter(|&u| s.adjacent(i, u)).collect();
        s.current.push(i);
        s.expand(&candidates, s.weights[i as usize]);
        s.current.pop();
        if s.aborted {
            break;
        }
        s.c[i as usize] = s.best_weight;
    }

    let mut members: Vec<usize> = s.best.iter().map(|&p| s.order[p as usize]).collect();
    members.sort_unstable();
    CliqueResult {
        weight: g.total_weight(&members),
        members,
        optimal: !s.aborted,
        stats: SearchStats {
            nodes_expanded: s.nodes,
            elapsed: clock.elapsed(),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicParams {
    pub iterations: u64,
    pub rng_seed: u64,
}

impl Default for HeuristicParams {
    fn default() -> Self {
        HeuristicParams {
            iterations: 10_000,
            rng_seed: 0,
        }
    }
}

/// Best of `iterations` randomized greedy constructions.
///
/// Each construction starts from all vertices and repeatedly picks a
/// candidate with probability proportional to its weight, then restricts
/// the candidates to its neighbourhood. Deterministic for a given seed.
pub fn max_weight_clique_heuristic(g: &WeightedGraph, params: HeuristicParams) -> CliqueResult {
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let mut best: Vec<usize> = Vec::new();
    let mut best_weight = 0u64;
    let mut steps = 0u64;
    let all: Vec<usize> = (0..g.node_count()).collect();
    let mut clique = Vec::new();
    for _ in 0..params.iterations {
        let mut candidates = all.clone();
        clique.clear();
        let mut weight = 0u64;
        while !candidates.is_empty() {
            steps += 1;
            let total: u64 = candidates.iter().map(|&v| g.weight(v)).sum();
            let pick = if total == 0 {
                candidates[rng.gen_range(0..candidates.len())]
            } else {
                let mut r = rng.gen_range(0..total);
                let mut chosen = candidates[candidates.len() - 1];
                for &v in &candidates {
                    let w = g.weight(v);
                    if r < w {
                        chosen = v;
                        break;
                    }
                    r -= w;
                }
                chosen
            };
            clique.push(pick);
            weight += g.weight(pick);
            candidates.retain(|&u| g.is_adjacent(pick, u));
        }
        if weight > best_weight || best.is_empty() && !clique.is_empty() {
            best_weight = weight;
            best.clone_from(&clique);
        }
    }
    best.sort_unstable();
    CliqueResult {
        weight: best_weight,
        members: best,
        optimal: false,
        stats: SearchStats {
            nodes_expanded: steps,
            elapsed: Duration::ZERO,
        },
    }
}
