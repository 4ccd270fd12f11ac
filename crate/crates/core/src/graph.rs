//! The compatibility graph of orbits for a target minimum distance.
//!
//! Nodes are orbits whose intra-orbit distance is at least `d`, weighted by
//! orbit size and sorted by canonical representative. Two nodes are adjacent
//! when the inter-orbit distance is at least `d`, so a clique is a code of
//! minimum distance `d` whose size is the clique weight.

use alloc::vec::Vec;

use thiserror::Error;

use crate::clique::WeightedGraph;
use crate::orbit::{all_at_least, Distance, DoublewordAction, Orbit, OrbitError};
use crate::word::Doubleword;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("orbit representative {0} listed twice")]
    DuplicateRep(Doubleword),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityGraph {
    pub graph: WeightedGraph,
    /// Canonical representative of each node, ascending.
    pub reps: Vec<Doubleword>,
    pub intra: Vec<Distance>,
    pub target_d: u32,
}

impl CompatibilityGraph {
    pub fn node_count(&self) -> usize {
        self.reps.len()
    }
}

/// Node set and member lists of a graph under construction.
///
/// Edge tests are independent, so callers may compute [`row`](Self::row)
/// for different nodes concurrently and hand the rows to
/// [`finish`](Self::finish).
#[derive(Debug)]
pub struct GraphBuilder {
    target_d: u32,
    reps: Vec<Doubleword>,
    intra: Vec<Distance>,
    members: Vec<Vec<u64>>,
}

impl GraphBuilder {
    pub fn new(action: &DoublewordAction, orbits: &[Orbit], d: u32) -> Result<Self, BuildError> {
        let mut idx: Vec<usize> = (0..orbits.len()).collect();
        idx.sort_by_key(|&i| orbits[i].rep);
        if let Some(w) = idx.windows(2).find(|w| orbits[w[0]].rep == orbits[w[1]].rep) {
            return Err(BuildError::DuplicateRep(orbits[w[0]].rep));
        }
        let mut reps = Vec::new();
        let mut intra = Vec::new();
        let mut members = Vec::new();
        for i in idx {
            let o = &orbits[i];
            if !o.intra.at_least(d) {
                continue;
            }
            reps.push(o.rep);
            intra.push(o.intra);
            members.push(match o.members() {
                Some(m) => m.to_vec(),
                None => action.orbit_halves(o.rep)?,
            });
        }
        Ok(GraphBuilder {
            target_d: d,
            reps,
            intra,
            members,
        })
    }

    pub fn node_count(&self) -> usize {
        self.reps.len()
    }

    /// Fixes the representative of the larger orbit and scans the smaller
    /// one, stopping at the first pair closer than `d`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (small, large) = if self.members[i].len() <= self.members[j].len() {
            (i, j)
        } else {
            (j, i)
        };
        all_at_least(self.reps[large].half(), &self.members[small], self.target_d)
    }

    /// Neighbours `j > i` of node `i`.
    pub fn row(&self, i: usize) -> Vec<usize> {
        ((i + 1)..self.node_count()).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Assembles the graph from `rows[i]` = neighbours `j > i` of node `i`.
    pub fn finish(self, rows: Vec<Vec<usize>>) -> CompatibilityGraph {
        let weights = self.members.iter().map(|m| m.len() as u64).collect();
        let mut graph = WeightedGraph::new(weights);
        for (i, row) in rows.into_iter().enumerate() {
            for j in row {
                graph
                    .add_edge(i, j)
                    .expect("row entries are in range and above the diagonal");
            }
        }
        CompatibilityGraph {
            graph,
            reps: self.reps,
            intra: self.intra,
            target_d: self.target_d,
        }
    }

    pub fn build(self) -> CompatibilityGraph {
        let rows = (0..self.node_count()).map(|i| self.row(i)).collect();
        self.finish(rows)
    }
}

/// Builds the graph on a single thread.
pub fn build_graph(
    action: &DoublewordAction,
    orbits: &[Orbit],
    d: u32,
) -> Result<CompatibilityGraph, BuildError> {
    Ok(GraphBuilder::new(action, orbits, d)?.build())
}
