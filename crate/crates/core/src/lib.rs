//! Binary error-correcting codes built as unions of orbits of a permutation
//! group acting on doublewords.
//!
//! A codeword `w` of length `n` is encoded as the doubleword `w ‖ !w` of
//! length `2n`. Permutations of the `2n` doubleword coordinates that keep
//! each complement pair together act on codewords as coordinate
//! permutations combined with value flips, i.e. as isometries. A code is a
//! union of orbits; choosing orbits is a maximum-weight clique problem on
//! the [`graph::CompatibilityGraph`].
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! drivers and the command line live in the companion `orbit-codes-cli`
//! crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod clique;
pub mod code;
pub mod graph;
pub mod orbit;
pub mod perm;
pub mod word;

pub use clique::{
    max_weight_clique_exact, max_weight_clique_heuristic, Budget, CliqueResult, Clock, HeuristicParams,
    NoClock, WeightedGraph,
};
pub use code::{
    assemble_code, extend_parity, shorten, shorten_best, verify_code, Assembly, Code, CodeError,
    VerificationReport, VerifyMode,
};
pub use graph::{build_graph, CompatibilityGraph, GraphBuilder};
pub use orbit::{Distance, DoublewordAction, EnumerateOptions, Orbit};
pub use perm::{
    compose, inverse, is_doubleword_compatible, lift_coordinate_group, parse_cycles, Permutation,
    PermutationGroup,
};
pub use word::{
    apply_permutation, codeword_to_doubleword, doubleword_to_codeword, hamming, hamming_doublewords, Codeword,
    Doubleword,
};
