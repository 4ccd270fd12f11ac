//! Multi-threaded drivers for the two quadratic stages: graph edges and
//! pairwise verification. Both give the same result as the single-threaded
//! core routines for any thread count.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use orbit_codes::clique::Clock;
use orbit_codes::code::{pairwise_min_rows, verify_code_with, CodeError};
use orbit_codes::graph::BuildError;
use orbit_codes::{Code, CompatibilityGraph, DoublewordAction, GraphBuilder, Orbit, VerificationReport, VerifyMode};

/// Wall-clock time since construction.
#[derive(Debug, Clone, Copy)]
pub struct InstantClock(Instant);

impl InstantClock {
    pub fn start() -> Self {
        InstantClock(Instant::now())
    }
}

impl Clock for InstantClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

pub fn build_graph_parallel(
    action: &DoublewordAction,
    orbits: &[Orbit],
    d: u32,
) -> Result<CompatibilityGraph, BuildError> {
    let builder = GraphBuilder::new(action, orbits, d)?;
    let rows = (0..builder.node_count()).into_par_iter().map(|i| builder.row(i)).collect();
    Ok(builder.finish(rows))
}

/// Row blocks shrink towards the end, where rows are shorter, so blocks do
/// roughly equal numbers of pairs.
fn row_blocks(m: usize, target_pairs: usize) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < m {
        let mut end = start;
        let mut pairs = 0;
        while end < m && pairs < target_pairs {
            pairs += m - end - 1;
            end += 1;
        }
        out.push(start..end.max(start + 1));
        start = end.max(start + 1);
    }
    out
}

/// Same contract as `pairwise_min_rows(words, 0..len, floor)`.
pub fn pairwise_min_parallel(words: &[u64], floor: u32) -> Option<(u32, usize, usize)> {
    let blocks = row_blocks(words.len(), 1 << 20);
    blocks
        .into_par_iter()
        .filter_map(|rows| pairwise_min_rows(words, rows, floor))
        .min()
}

pub fn verify_parallel(code: &Code, mode: VerifyMode<'_>) -> Result<VerificationReport, CodeError> {
    verify_code_with(code, mode, pairwise_min_parallel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbit_codes::{build_graph, lift_coordinate_group, parse_cycles, verify_code, EnumerateOptions};

    #[test]
    fn blocks_cover_rows_once() {
        for m in [0, 1, 2, 17, 1000] {
            for target in [1, 10, 1 << 20] {
                let blocks = row_blocks(m, target);
                let flat: Vec<usize> = blocks.into_iter().flatten().collect();
                assert_eq!(flat, (0..m).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn pairwise_matches_sequential() {
        let words: Vec<u64> = (0..3000u64).map(|i| i.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 40).collect();
        let mut words = words;
        words.sort_unstable();
        words.dedup();
        for floor in [1, 3, 64] {
            assert_eq!(
                pairwise_min_parallel(&words, floor),
                pairwise_min_rows(&words, 0..words.len(), floor)
            );
        }
        let code = Code::new(24, words).unwrap();
        assert_eq!(
            verify_parallel(&code, VerifyMode::Pairwise).unwrap(),
            verify_code(&code, VerifyMode::Pairwise).unwrap()
        );
    }

    #[test]
    fn graph_matches_sequential() {
        let g = lift_coordinate_group(&[parse_cycles("(1 2 3 4 5 6 7 8 9)", 9).unwrap()]).unwrap();
        let a = DoublewordAction::new(&g, 9).unwrap();
        let orbits = a.enumerate_orbit_reps(&EnumerateOptions::default()).unwrap();
        assert_eq!(build_graph_parallel(&a, &orbits, 3).unwrap(), build_graph(&a, &orbits, 3).unwrap());
    }
}
