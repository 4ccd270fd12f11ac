//! Permutations in cycle notation and groups given by generators.
//!
//! Points are 1-based at every public boundary (parsing, formatting,
//! [`Permutation::image`], error values). Internally images are stored
//! 0-based.
//!
//! Composition convention: `compose(p, q)` maps `i` to `p(q(i))`, i.e. `q`
//! is applied first.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },
    #[error("malformed cycle notation at byte {offset}: {reason}")]
    Malformed { offset: usize, reason: &'static str },
    #[error("image list is not a bijection on 1..={degree}")]
    NotBijection { degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("group needs at least one generator")]
    NoGenerators,
    #[error("degree {degree} is not 2n for n = {n}")]
    NotDoubled { degree: usize, n: usize },
    #[error("generator {generator} breaks the complement pairing at point {point}")]
    Incompatible { generator: usize, point: usize },
}

/// A bijection on `{1..m}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the image
    /// of point `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree {
                return Err(PermError::PointOutOfRange { point: img, degree });
            }
            if core::mem::replace(&mut seen[img - 1], true) {
                return Err(PermError::NotBijection { degree });
            }
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based `point`.
    ///
    /// Panics if `point` is outside `1..=degree`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 0-based image table.
    pub fn images0(&self) -> &[u32] {
        &self.images
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Disjoint cycles of length at least two, each starting at its
    /// smallest point, ordered by that point. 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation with space separators; `()` for the identity.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                // writing into a String cannot fail
                let _ = fmt::write(&mut s, format_args!("{p}"));
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self.format_cycles())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

/// Parses a product of disjoint cycles such as `(1 26)(2 25)` or `(1,2,3)`.
///
/// Points not mentioned are fixed, so the empty string and `()` both give
/// the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    if degree == 0 {
        return Err(PermError::ZeroDegree);
    }
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(PermError::Malformed {
                offset: pos,
                reason: "expected '('",
            });
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        let mut need_sep = false;
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => {
                    return Err(PermError::Malformed {
                        offset: pos,
                        reason: "unclosed '('",
                    })
                }
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(b',') => {
                    if cycle.is_empty() || !need_sep {
                        return Err(PermError::Malformed {
                            offset: pos,
                            reason: "unexpected ','",
                        });
                    }
                    need_sep = false;
                    pos += 1;
                }
                Some(b) if b.is_ascii_digit() => {
                    let mut value: usize = 0;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        value = value
                            .saturating_mul(10)
                            .saturating_add((bytes[pos] - b'0') as usize);
                        pos += 1;
                    }
                    if value == 0 || value > degree {
                        return Err(PermError::PointOutOfRange {
                            point: value,
                            degree,
                        });
                    }
                    if used[value - 1] {
                        return Err(PermError::RepeatedPoint { point: value });
                    }
                    used[value - 1] = true;
                    cycle.push(value - 1);
                    need_sep = true;
                }
                Some(_) => {
                    return Err(PermError::Malformed {
                        offset: pos,
                        reason: "unexpected character",
                    })
                }
            }
        }
        for (k, &p) in cycle.iter().enumerate() {
            images[p] = cycle[(k + 1) % cycle.len()] as u32;
        }
    }
    Ok(Permutation { images })
}

/// `p ∘ q`: the result maps `i` to `p(q(i))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    if p.degree() != q.degree() {
        return Err(PermError::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(Permutation {
        images: q.images.iter().map(|&j| p.images[j as usize]).collect(),
    })
}

pub fn inverse(p: &Permutation) -> Permutation {
    let mut images = vec![0u32; p.degree()];
    for (i, &j) in p.images.iter().enumerate() {
        images[j as usize] = i as u32;
    }
    Permutation { images }
}

/// Whether `p` maps every complement pair `{i, n+i}` onto a complement pair,
/// i.e. `|p(i) - p(n+i)| = n` for all `i` in `1..=n`.
pub fn is_doubleword_compatible(p: &Permutation, n: usize) -> Result<bool, PermError> {
    if p.degree() != 2 * n {
        return Err(PermError::NotDoubled {
            degree: p.degree(),
            n,
        });
    }
    Ok(first_incompatible_point(p, n).is_none())
}

fn first_incompatible_point(p: &Permutation, n: usize) -> Option<usize> {
    (0..n).find(|&i| p.images[i].abs_diff(p.images[n + i]) as usize != n)
}

/// A permutation group described by its generators only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, PermError> {
        let degree = generators.first().ok_or(PermError::NoGenerators)?.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermutationGroup { degree, generators })
    }

    /// The group generated by the identity alone.
    pub fn trivial(degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        Ok(PermutationGroup {
            degree,
            generators: vec![Permutation::identity(degree)],
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Checks that the group acts on doublewords of length `2n`.
    pub fn check_doubleword_compatible(&self, n: usize) -> Result<(), PermError> {
        if self.degree != 2 * n {
            return Err(PermError::NotDoubled {
                degree: self.degree,
                n,
            });
        }
        for (k, g) in self.generators.iter().enumerate() {
            if let Some(i) = first_incompatible_point(g, n) {
                return Err(PermError::Incompatible {
                    generator: k + 1,
                    point: i + 1,
                });
            }
        }
        Ok(())
    }
}

/// Lifts coordinate permutations of degree `n` to the doubleword action on
/// `2n` points: `p(i) = q(i)` and `p(n+i) = q(i) + n`.
pub fn lift_coordinate_group(coordinate_perms: &[Permutation]) -> Result<PermutationGroup, PermError> {
    let n = coordinate_perms
        .first()
        .ok_or(PermError::NoGenerators)?
        .degree();
    let mut gens = Vec::with_capacity(coordinate_perms.len());
    for q in coordinate_perms {
        if q.degree() != n {
            return Err(PermError::DegreeMismatch {
                left: n,
                right: q.degree(),
            });
        }
        let mut images = Vec::with_capacity(2 * n);
        images.extend_from_slice(&q.images);
        images.extend(q.images.iter().map(|&j| j + n as u32));
        gens.push(Permutation { images });
    }
    PermutationGroup::new(gens)
}
