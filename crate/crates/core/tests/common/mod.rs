#![allow(dead_code)]

pub mod oracle;

use orbit_codes::{parse_cycles, Doubleword, DoublewordAction, Permutation, PermutationGroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub struct Fixture {
    pub n: usize,
    pub group: PermutationGroup,
    pub reps: Vec<Doubleword>,
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Loads `fixtures/<name>` from the workspace root.
pub fn fixture(name: &str) -> Fixture {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/");
    let group = std::fs::read_to_string(format!("{root}{name}/group.txt")).unwrap();
    let reps = std::fs::read_to_string(format!("{root}{name}/reps.txt")).unwrap();
    let mut lines = data_lines(&group);
    let degree: usize = lines.next().unwrap().strip_prefix("degree ").unwrap().parse().unwrap();
    let n: usize = lines.next().unwrap().strip_prefix("n ").unwrap().parse().unwrap();
    assert_eq!(degree, 2 * n);
    let gens = lines.map(|l| parse_cycles(l, degree).unwrap()).collect();
    Fixture {
        n,
        group: PermutationGroup::new(gens).unwrap(),
        reps: data_lines(&reps).map(|l| l.parse().unwrap()).collect(),
    }
}

impl Fixture {
    pub fn action(&self) -> DoublewordAction {
        DoublewordAction::new(&self.group, self.n).unwrap()
    }
}

pub fn random_permutation<R: Rng>(rng: &mut R, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=degree).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).unwrap()
}

/// A random doubleword-compatible permutation on `2n` points: a coordinate
/// permutation combined with random value flips.
pub fn random_compatible<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let q = random_permutation(rng, n);
    let mut images = vec![0; 2 * n];
    for i in 1..=n {
        let target = q.image(i);
        let (a, b) = if rng.gen_bool(0.5) { (target, target + n) } else { (target + n, target) };
        images[i - 1] = a;
        images[n + i - 1] = b;
    }
    Permutation::from_images(&images).unwrap()
}

pub fn random_group<R: Rng>(rng: &mut R, n: usize, generators: usize) -> PermutationGroup {
    PermutationGroup::new((0..generators).map(|_| random_compatible(rng, n)).collect()).unwrap()
}
