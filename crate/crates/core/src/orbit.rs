//! Orbits of doublewords under a group given by generators.
//!
//! Orbits are closed by breadth-first search over the generators; nothing
//! here needs the group order or its element list. Distances are reported in
//! the codeword domain (half the doubleword distance).
//!
//! Every doubleword-compatible permutation is an isometry of the codewords,
//! so the minimum distance between two orbits can be found by fixing one
//! member of one orbit and scanning the other orbit. The intra- and
//! inter-orbit routines rely on this.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;
use thiserror::Error;

use crate::perm::{PermError, PermutationGroup};
use crate::word::{distance, BitPermuter, Doubleword, WordError, MAX_DOUBLEWORD_HALF};

/// Largest `n` for which all `2^n` codewords may be swept.
pub const MAX_ENUMERATION_HALF: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("doubleword of length {word} does not match group degree {degree}")]
    DegreeMismatch { degree: usize, word: usize },
    #[error("n = {n} exceeds the limit {max}")]
    TooLong { n: usize, max: usize },
}

/// A codeword-domain distance; `Infinite` stands for "no pair exists".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn at_least(self, d: u32) -> bool {
        match self {
            Distance::Finite(x) => x >= d,
            Distance::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(x) => Some(x),
            Distance::Infinite => None,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Distance::Finite(x) if x % 2 == 1)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(x) => write!(f, "{x}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl From<Option<u32>> for Distance {
    fn from(d: Option<u32>) -> Self {
        d.map_or(Distance::Infinite, Distance::Finite)
    }
}

/// One orbit `G.x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Smallest member in string order.
    pub rep: Doubleword,
    pub size: usize,
    /// Minimum distance between two distinct members.
    pub intra: Distance,
    /// Minimum codeword weight over all members.
    pub min_weight: u32,
    members: Option<Vec<u64>>,
}

impl Orbit {
    /// Sorted codeword halves of all members, if they were retained.
    pub fn members(&self) -> Option<&[u64]> {
        self.members.as_deref()
    }

    pub fn member_doublewords(&self) -> Option<impl Iterator<Item = Doubleword> + '_> {
        let n = self.rep.half_len();
        self.members
            .as_ref()
            .map(move |m| m.iter().map(move |&h| Doubleword::from_half_unchecked(n, h)))
    }

    pub fn drop_members(&mut self) {
        self.members = None;
    }

    pub fn take_members(&mut self) -> Option<Vec<u64>> {
        self.members.take()
    }
}

/// Result of an inter-orbit distance query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterDistance {
    pub distance: Distance,
    /// Both arguments lie in one orbit; `distance` is then the intra-orbit
    /// distance.
    pub same_orbit: bool,
}

/// Options for [`DoublewordAction::enumerate_orbit_reps`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub weight_min: u32,
    pub weight_max: u32,
    pub max_orbits: Option<usize>,
    pub keep_members: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            weight_min: 0,
            weight_max: u32::MAX,
            max_orbits: None,
            keep_members: false,
        }
    }
}

/// Minimum distance from `x` to the members of `others` and the member
/// attaining it. `x` itself is skipped when present.
pub fn min_distance_to(x: u64, others: &[u64]) -> Option<(u32, u64)> {
    let mut best: Option<(u32, u64)> = None;
    for &b in others {
        if b == x {
            continue;
        }
        let d = distance(x, b);
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, b));
            if d == 1 {
                break;
            }
        }
    }
    best
}

/// Whether every member of `others` other than `x` is at distance `>= d`.
pub fn all_at_least(x: u64, others: &[u64], d: u32) -> bool {
    others.iter().all(|&b| b == x || distance(x, b) >= d)
}

/// A doubleword-compatible group compiled for fast application.
#[derive(Debug, Clone)]
pub struct DoublewordAction {
    n: usize,
    generators: Vec<BitPermuter>,
}

impl DoublewordAction {
    /// Validates that `group` has degree `2n` and that every generator keeps
    /// complement pairs together.
    pub fn new(group: &PermutationGroup, n: usize) -> Result<Self, OrbitError> {
        if n == 0 || n > MAX_DOUBLEWORD_HALF {
            return Err(OrbitError::TooLong {
                n,
                max: MAX_DOUBLEWORD_HALF,
            });
        }
        group.check_doubleword_compatible(n)?;
        let generators = group
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .map(BitPermuter::new)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DoublewordAction { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, x: Doubleword) -> Result<(), OrbitError> {
        if x.half_len() != self.n {
            return Err(OrbitError::DegreeMismatch {
                degree: 2 * self.n,
                word: x.len(),
            });
        }
        Ok(())
    }

    #[inline]
    fn neighbours(&self, half: u64) -> impl Iterator<Item = u64> + '_ {
        let bits = Doubleword::from_half_unchecked(self.n, half).bits();
        let n = self.n;
        self.generators.iter().map(move |g| {
            let y = g.apply(bits);
            debug_assert!(Doubleword::from_bits(n, y).is_ok());
            y >> n
        })
    }

    /// Sorted codeword halves of every member of `G.x`.
    pub fn orbit_halves(&self, x: Doubleword) -> Result<Vec<u64>, OrbitError> {
        self.check(x)?;
        let seed = x.half();
        let mut seen: HashSet<u64> = HashSet::new();
        seen.insert(seed);
        let mut members = vec![seed];
        let mut head = 0;
        while head < members.len() {
            let cur = members[head];
            head += 1;
            for y in self.neighbours(cur) {
                if seen.insert(y) {
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Ok(members)
    }

    fn orbit_from_members(&self, members: Vec<u64>, keep: bool) -> Orbit {
        let rep_half = members[0];
        let intra = min_distance_to(rep_half, &members).map(|(d, _)| d).into();
        let min_weight = members.iter().map(|h| h.count_ones()).min().unwrap_or(0);
        Orbit {
            rep: Doubleword::from_half_unchecked(self.n, rep_half),
            size: members.len(),
            intra,
            min_weight,
            members: keep.then_some(members),
        }
    }

    /// BFS closure of `seed` with its canonical representative, size and
    /// intra-orbit distance. Members are kept only when `keep_members`.
    pub fn compute_orbit(&self, seed: Doubleword, keep_members: bool) -> Result<Orbit, OrbitError> {
        let members = self.orbit_halves(seed)?;
        Ok(self.orbit_from_members(members, keep_members))
    }

    /// Minimum distance between two distinct codewords of `G.x`;
    /// `Infinite` for a singleton orbit.
    pub fn intra_orbit_min_distance(&self, x: Doubleword) -> Result<Distance, OrbitError> {
        let members = self.orbit_halves(x)?;
        Ok(min_distance_to(x.half(), &members).map(|(d, _)| d).into())
    }

    /// Minimum distance between a codeword of `G.x` and one of `G.y`.
    pub fn inter_orbit_min_distance(
        &self,
        x: Doubleword,
        y: Doubleword,
    ) -> Result<InterDistance, OrbitError> {
        self.check(x)?;
        let members = self.orbit_halves(y)?;
        let same_orbit = members.binary_search(&x.half()).is_ok();
        Ok(InterDistance {
            distance: min_distance_to(x.half(), &members).map(|(d, _)| d).into(),
            same_orbit,
        })
    }

    /// Sweeps all `2^n` codewords in increasing order and emits one orbit
    /// per class, keyed by its smallest member.
    ///
    /// Only classes whose minimum member weight lies in
    /// `[weight_min, weight_max]` are emitted; the sweep stops after
    /// `max_orbits` emitted classes.
    pub fn enumerate_orbit_reps(&self, opts: &EnumerateOptions) -> Result<Vec<Orbit>, OrbitError> {
        if self.n > MAX_ENUMERATION_HALF {
            return Err(OrbitError::TooLong {
                n: self.n,
                max: MAX_ENUMERATION_HALF,
            });
        }
        let total = 1u64 << self.n;
        let mut visited = vec![0u64; (total as usize).div_ceil(64)];
        let mark = |v: &mut [u64], h: u64| -> bool {
            let (w, b) = ((h >> 6) as usize, h & 63);
            let fresh = v[w] >> b & 1 == 0;
            v[w] |= 1 << b;
            fresh
        };
        let mut out = Vec::new();
        let mut members: Vec<u64> = Vec::new();
        for start in 0..total {
            if opts.max_orbits.is_some_and(|m| out.len() >= m) {
                break;
            }
            if !mark(&mut visited, start) {
                continue;
            }
            members.clear();
            members.push(start);
            let mut head = 0;
            while head < members.len() {
                let cur = members[head];
                head += 1;
                for y in self.neighbours(cur) {
                    if mark(&mut visited, y) {
                        members.push(y);
                    }
                }
            }
            let min_weight = members.iter().map(|h| h.count_ones()).min().unwrap_or(0);
            if min_weight < opts.weight_min || min_weight > opts.weight_max {
                continue;
            }
            members.sort_unstable();
            debug_assert_eq!(members[0], start);
            let orbit = self.orbit_from_members(
                if opts.keep_members {
                    members.clone()
                } else {
                    core::mem::take(&mut members)
                },
                opts.keep_members,
            );
            out.push(orbit);
        }
        Ok(out)
    }
}
