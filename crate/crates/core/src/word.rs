//! Codewords, the doubleword encoding and Hamming distance.
//!
//! A word of length `len` lives in the low `len` bits of a `u64` with
//! coordinate 1 in the most significant of those bits, so numeric order of
//! the backing integer equals string order of the `0`/`1` listing.
//!
//! A doubleword of a codeword `w` of length `n` is `w` followed by its
//! complement: `x_i = w_i` and `x_{n+i} = 1 - w_i`. Complementing a
//! coordinate and moving coordinates are then both coordinate permutations
//! of the doubleword.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

/// Longest codeword representable in one machine word.
pub const MAX_CODEWORD_LEN: usize = 64;
/// Longest codeword whose doubleword still fits one machine word.
pub const MAX_DOUBLEWORD_HALF: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("length {len} outside 1..={max}")]
    BadLength { len: usize, max: usize },
    #[error("invalid character {ch:?} at position {position}")]
    BadChar { ch: char, position: usize },
    #[error("doubleword string has odd length {len}")]
    OddLength { len: usize },
    #[error("complement invariant violated at coordinate {coordinate}")]
    NotComplemented { coordinate: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("permutation degree {degree} does not match doubleword length {len}")]
    DegreeMismatch { degree: usize, len: usize },
}

#[inline]
pub fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn parse_bits(s: &str, max: usize) -> Result<(usize, u64), WordError> {
    let len = s.len();
    if len == 0 || len > max {
        return Err(WordError::BadLength { len, max });
    }
    let mut bits = 0u64;
    for (position, ch) in s.chars().enumerate() {
        bits <<= 1;
        match ch {
            '0' => {}
            '1' => bits |= 1,
            ch => {
                return Err(WordError::BadChar {
                    ch,
                    position: position + 1,
                })
            }
        }
    }
    Ok((len, bits))
}

fn write_bits(f: &mut fmt::Formatter<'_>, len: usize, bits: u64) -> fmt::Result {
    for k in (0..len).rev() {
        f.write_str(if bits >> k & 1 == 1 { "1" } else { "0" })?;
    }
    Ok(())
}

/// A binary vector of length `1..=64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    len: u8,
    bits: u64,
}

impl Codeword {
    pub fn new(len: usize, bits: u64) -> Result<Self, WordError> {
        if len == 0 || len > MAX_CODEWORD_LEN {
            return Err(WordError::BadLength {
                len,
                max: MAX_CODEWORD_LEN,
            });
        }
        Ok(Codeword {
            len: len as u8,
            bits: bits & low_mask(len),
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Bit at 1-based `coordinate`.
    pub fn bit(&self, coordinate: usize) -> bool {
        debug_assert!(coordinate >= 1 && coordinate <= self.len());
        self.bits >> (self.len() - coordinate) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn to_bit_string(&self) -> String {
        alloc::format!("{self}")
    }
}

impl FromStr for Codeword {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        let (len, bits) = parse_bits(s, MAX_CODEWORD_LEN)?;
        Codeword::new(len, bits)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, self.len(), self.bits)
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

/// A length-`2n` vector whose second half is the complement of the first.
///
/// Ordering is the string order of the listing, which is also the order of
/// the codeword halves.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Doubleword {
    n: u8,
    bits: u64,
}

impl Doubleword {
    /// Encodes a codeword of length `n <= 32`.
    pub fn from_codeword(w: Codeword) -> Result<Self, WordError> {
        let n = w.len();
        if n > MAX_DOUBLEWORD_HALF {
            return Err(WordError::BadLength {
                len: n,
                max: MAX_DOUBLEWORD_HALF,
            });
        }
        Ok(Self::from_half_unchecked(n, w.bits))
    }

    /// Doubleword from the raw codeword half; `n` must be in `1..=32`.
    #[inline]
    pub(crate) fn from_half_unchecked(n: usize, half: u64) -> Self {
        let mask = low_mask(n);
        Doubleword {
            n: n as u8,
            bits: (half << n) | (!half & mask),
        }
    }

    /// Validates raw `2n`-bit contents.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self, WordError> {
        if n == 0 || n > MAX_DOUBLEWORD_HALF {
            return Err(WordError::BadLength {
                len: n,
                max: MAX_DOUBLEWORD_HALF,
            });
        }
        let mask = low_mask(n);
        let bits = bits & low_mask(2 * n);
        let first = bits >> n;
        let second = bits & mask;
        let bad = (first ^ second) ^ mask;
        if bad != 0 {
            // highest set bit = lowest coordinate
            let coordinate = n - (63 - bad.leading_zeros() as usize);
            return Err(WordError::NotComplemented { coordinate });
        }
        Ok(Doubleword { n: n as u8, bits })
    }

    /// Codeword length `n`.
    pub fn half_len(&self) -> usize {
        self.n as usize
    }

    /// Doubleword length `2n`.
    pub fn len(&self) -> usize {
        2 * self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// The first half as a raw integer.
    #[inline]
    pub fn half(&self) -> u64 {
        self.bits >> self.n
    }

    pub fn to_codeword(&self) -> Codeword {
        Codeword {
            len: self.n,
            bits: self.half(),
        }
    }

    pub fn to_bit_string(&self) -> String {
        alloc::format!("{self}")
    }
}

impl FromStr for Doubleword {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        let (len, bits) = parse_bits(s, 2 * MAX_DOUBLEWORD_HALF)?;
        if len % 2 != 0 {
            return Err(WordError::OddLength { len });
        }
        Doubleword::from_bits(len / 2, bits)
    }
}

impl fmt::Display for Doubleword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, self.len(), self.bits)
    }
}

impl fmt::Debug for Doubleword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Doubleword({self})")
    }
}

pub fn codeword_to_doubleword(w: Codeword) -> Result<Doubleword, WordError> {
    Doubleword::from_codeword(w)
}

/// Decodes raw `2n` bits, rejecting anything that breaks the complement
/// structure.
pub fn doubleword_to_codeword(n: usize, bits: u64) -> Result<Codeword, WordError> {
    Doubleword::from_bits(n, bits).map(|x| x.to_codeword())
}

/// Population count of the XOR of two equal-length vectors.
pub fn hamming(a: Codeword, b: Codeword) -> Result<u32, WordError> {
    if a.len != b.len {
        return Err(WordError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok((a.bits ^ b.bits).count_ones())
}

/// Distance between two doublewords; always twice the codeword distance.
pub fn hamming_doublewords(a: Doubleword, b: Doubleword) -> Result<u32, WordError> {
    if a.n != b.n {
        return Err(WordError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok((a.bits ^ b.bits).count_ones())
}

/// Hamming distance between raw words.
#[inline(always)]
pub fn distance(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// A coordinate permutation compiled to byte lookup tables, so applying it
/// to a word costs one table lookup per byte.
#[derive(Clone)]
pub struct BitPermuter {
    len: usize,
    tables: Vec<[u64; 256]>,
}

impl BitPermuter {
    /// Compiles `p` for words of length `p.degree() <= 64`. The output bit at
    /// coordinate `p(i)` equals the input bit at coordinate `i`.
    pub fn new(p: &Permutation) -> Result<Self, WordError> {
        let len = p.degree();
        if len == 0 || len > 64 {
            return Err(WordError::BadLength { len, max: 64 });
        }
        let images = p.images0();
        let chunks = len.div_ceil(8);
        let mut tables = alloc::vec![[0u64; 256]; chunks];
        for (c, table) in tables.iter_mut().enumerate() {
            for (value, slot) in table.iter_mut().enumerate() {
                let mut out = 0u64;
                for t in 0..8 {
                    let pos = 8 * c + t;
                    if pos >= len || value >> t & 1 == 0 {
                        continue;
                    }
                    let coord = len - 1 - pos;
                    out |= 1u64 << (len - 1 - images[coord] as usize);
                }
                *slot = out;
            }
        }
        Ok(BitPermuter { len, tables })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn apply(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        for (c, table) in self.tables.iter().enumerate() {
            out |= table[(bits >> (8 * c)) as usize & 0xff];
        }
        out
    }
}

impl fmt::Debug for BitPermuter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BitPermuter").field("len", &self.len).finish()
    }
}

/// Applies a (doubleword-compatible) permutation to a doubleword.
///
/// Fails if the degree is wrong or if the result breaks the complement
/// structure, which happens only when `p` is not compatible.
pub fn apply_permutation(p: &Permutation, x: Doubleword) -> Result<Doubleword, WordError> {
    if p.degree() != x.len() {
        return Err(WordError::DegreeMismatch {
            degree: p.degree(),
            len: x.len(),
        });
    }
    let len = x.len();
    let images = p.images0();
    let mut out = 0u64;
    for (coord, &img) in images.iter().enumerate() {
        if x.bits >> (len - 1 - coord) & 1 == 1 {
            out |= 1u64 << (len - 1 - img as usize);
        }
    }
    Doubleword::from_bits(x.half_len(), out)
}
