//! Reference implementations that share no code path with the library's
//! search routines.

#![allow(dead_code)]

use std::collections::HashSet;

use orbit_codes::{apply_permutation, Doubleword, PermutationGroup, WeightedGraph};

fn adjacency_masks(g: &WeightedGraph) -> Vec<u128> {
    (0..g.node_count())
        .map(|u| (0..g.node_count()).filter(|&v| g.is_adjacent(u, v)).fold(0u128, |m, v| m | 1 << v))
        .collect()
}

/// Maximum clique weight by enumerating every vertex subset (at most 24
/// nodes).
pub fn max_clique_weight_by_subsets(g: &WeightedGraph) -> u64 {
    let n = g.node_count();
    assert!(n <= 24);
    let adj = adjacency_masks(g);
    let mut weight = vec![0u64; 1 << n];
    let mut is_clique = vec![true; 1 << n];
    let mut best = 0;
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        is_clique[mask] = is_clique[rest] && (adj[low] as usize & rest) == rest;
        weight[mask] = weight[rest] + g.weight(low);
        if is_clique[mask] {
            best = best.max(weight[mask]);
        }
    }
    best
}

/// Maximum clique weight by Bron–Kerbosch enumeration with pivoting (at most
/// 128 nodes). Branches whose clique weight plus the total candidate weight
/// cannot beat the best found so far are skipped.
pub fn max_clique_weight_by_branching(g: &WeightedGraph) -> u64 {
    let n = g.node_count();
    assert!(n <= 128);
    let adj = adjacency_masks(g);
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut best = 0;
    bron_kerbosch(g, &adj, 0, all, 0, &mut best);
    best
}

fn mask_weight(g: &WeightedGraph, mut m: u128) -> u64 {
    let mut w = 0;
    while m != 0 {
        w += g.weight(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    w
}

fn bron_kerbosch(g: &WeightedGraph, adj: &[u128], r_weight: u64, mut p: u128, mut x: u128, best: &mut u64) {
    if p == 0 {
        if x == 0 {
            *best = (*best).max(r_weight);
        }
        return;
    }
    if r_weight + mask_weight(g, p) <= *best {
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(g, adj, r_weight + g.weight(v), p & adj[v], x & adj[v], best);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Orbit members by naive BFS with the unoptimised permutation application.
pub fn naive_orbit(group: &PermutationGroup, seed: Doubleword) -> Vec<Doubleword> {
    let mut seen = HashSet::from([seed]);
    let mut queue = vec![seed];
    while let Some(x) = queue.pop() {
        for g in group.generators() {
            let y = apply_permutation(g, x).unwrap();
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

fn codeword_distance(a: Doubleword, b: Doubleword) -> u32 {
    // doubleword distance is twice the codeword distance
    (a.bits() ^ b.bits()).count_ones() / 2
}

/// Minimum over all pairs of distinct members; `None` for a singleton.
pub fn brute_intra(members: &[Doubleword]) -> Option<u32> {
    let mut best = None;
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let d = codeword_distance(a, b);
            best = Some(best.map_or(d, |x: u32| x.min(d)));
        }
    }
    best
}

/// Minimum over all pairs across two member lists, skipping equal words.
pub fn brute_inter(xs: &[Doubleword], ys: &[Doubleword]) -> Option<u32> {
    let mut best = None;
    for &a in xs {
        for &b in ys {
            if a != b {
                let d = codeword_distance(a, b);
                best = Some(best.map_or(d, |x: u32| x.min(d)));
            }
        }
    }
    best
}

/// All-pairs minimum distance of raw words.
pub fn brute_code_distance(words: &[u64]) -> Option<u32> {
    let mut best = None;
    for (i, &a) in words.iter().enumerate() {
        for &b in &words[i + 1..] {
            let d = (a ^ b).count_ones();
            best = Some(best.map_or(d, |x: u32| x.min(d)));
        }
    }
    best
}
