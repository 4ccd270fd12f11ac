//! Codes assembled from orbits, exact minimum-distance verification, and the
//! parity-extension and shortening constructions.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use thiserror::Error;

use crate::orbit::{min_distance_to, Distance, DoublewordAction, OrbitError};
use crate::word::{distance, low_mask, Codeword, Doubleword, WordError, MAX_CODEWORD_LEN};

/// Longest code the neighbourhood search handles (its membership table has
/// `2^length` bits).
pub const MAX_NEIGHBOURHOOD_LEN: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code length {length} outside 1..={max}")]
    LengthOutOfRange { length: usize, max: usize },
    #[error("word {0} occurs more than once")]
    DuplicateWord(Codeword),
    #[error("word {word:#x} does not fit length {length}")]
    WordTooLong { word: u64, length: usize },
    #[error("code is empty")]
    Empty,
    #[error("no orbit representatives")]
    NoReps,
    #[error("representatives {first} and {second} generate the same orbit")]
    DuplicateOrbit { first: usize, second: usize },
    #[error("minimum distance {0} is not odd; parity extension gives no guarantee")]
    NotOdd(Distance),
    #[error("report describes a ({report_length}, {report_size}) code, not ({length}, {size})")]
    ReportMismatch {
        report_length: usize,
        report_size: usize,
        length: usize,
        size: usize,
    },
    #[error("orbit data does not generate this code: {0}")]
    GeneratorMismatch(&'static str),
    #[error("coordinate {coordinate} outside 1..={length}")]
    CoordinateOutOfRange { coordinate: usize, length: usize },
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A set of distinct binary words of one length, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    length: usize,
    words: Vec<u64>,
    claimed_min_distance: Option<u32>,
}

impl Code {
    /// Builds a code from raw words (coordinate 1 is the most significant of
    /// the low `length` bits).
    pub fn new(length: usize, mut words: Vec<u64>) -> Result<Self, CodeError> {
        if length == 0 || length > MAX_CODEWORD_LEN {
            return Err(CodeError::LengthOutOfRange {
                length,
                max: MAX_CODEWORD_LEN,
            });
        }
        if let Some(&word) = words.iter().find(|&&w| w & !low_mask(length) != 0) {
            return Err(CodeError::WordTooLong { word, length });
        }
        words.sort_unstable();
        if let Some(w) = words.windows(2).find(|w| w[0] == w[1]) {
            return Err(CodeError::DuplicateWord(Codeword::new(length, w[0])?));
        }
        Ok(Code {
            length,
            words,
            claimed_min_distance: None,
        })
    }

    pub fn from_codewords(
        length: usize,
        words: impl IntoIterator<Item = Codeword>,
    ) -> Result<Self, CodeError> {
        let mut raw = Vec::new();
        for w in words {
            if w.len() != length {
                return Err(WordError::LengthMismatch {
                    left: length,
                    right: w.len(),
                }
                .into());
            }
            raw.push(w.bits());
        }
        Code::new(length, raw)
    }

    pub fn with_claim(mut self, d: u32) -> Self {
        self.claimed_min_distance = Some(d);
        self
    }

    pub fn claimed_min_distance(&self) -> Option<u32> {
        self.claimed_min_distance
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Sorted raw words.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn codewords(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.words
            .iter()
            .map(move |&w| Codeword::new(self.length, w).expect("length validated"))
    }

    pub fn contains(&self, word: u64) -> bool {
        self.words.binary_search(&word).is_ok()
    }
}

/// Per-orbit line of an assembled code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitSummary {
    pub rep: Doubleword,
    pub size: usize,
    pub intra: Distance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub code: Code,
    /// In the order of the representatives passed in.
    pub orbits: Vec<OrbitSummary>,
}

/// The union `G.x_1 ∪ … ∪ G.x_k`, mapped to codewords.
pub fn assemble_code(action: &DoublewordAction, reps: &[Doubleword]) -> Result<Assembly, CodeError> {
    if reps.is_empty() {
        return Err(CodeError::NoReps);
    }
    let mut orbits = Vec::with_capacity(reps.len());
    let mut words = Vec::new();
    for &x in reps {
        let members = action.orbit_halves(x)?;
        orbits.push(OrbitSummary {
            rep: Doubleword::from_codeword(Codeword::new(action.n(), members[0])?)?,
            size: members.len(),
            intra: min_distance_to(members[0], &members).map(|(d, _)| d).into(),
        });
        words.extend_from_slice(&members);
    }
    check_distinct_orbits(&orbits)?;
    // distinct orbits are disjoint, so the union has no repeated word
    let code = Code::new(action.n(), words)?;
    Ok(Assembly { code, orbits })
}

fn check_distinct_orbits(orbits: &[OrbitSummary]) -> Result<(), CodeError> {
    let mut idx: Vec<usize> = (0..orbits.len()).collect();
    idx.sort_by_key(|&i| (orbits[i].rep, i));
    match idx.windows(2).find(|w| orbits[w[0]].rep == orbits[w[1]].rep) {
        Some(w) => Err(CodeError::DuplicateOrbit {
            first: w[0] + 1,
            second: w[1] + 1,
        }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Every pair of words.
    Pairwise,
    /// Hamming balls of growing radius around every word, probed in a
    /// membership table.
    Neighbourhood,
    /// One representative per orbit against whole orbits.
    OrbitReduced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub length: usize,
    pub size: usize,
    pub min_distance: Distance,
    /// A pair of code words at exactly `min_distance`.
    pub witness: Option<(Codeword, Codeword)>,
    pub method: Method,
    pub orbits: Vec<OrbitSummary>,
}

impl VerificationReport {
    pub fn meets(&self, d: u32) -> bool {
        self.min_distance.at_least(d)
    }

    /// Whether the witness pair lies in `code` and attains the minimum.
    pub fn witness_holds(&self, code: &Code) -> bool {
        match (self.witness, self.min_distance) {
            (None, Distance::Infinite) => code.size() <= 1,
            (Some((a, b)), Distance::Finite(d)) => {
                a != b && code.contains(a.bits()) && code.contains(b.bits()) && distance(a.bits(), b.bits()) == d
            }
            _ => false,
        }
    }
}

pub enum VerifyMode<'a> {
    /// Exhaustive, choosing between pairwise scan and neighbourhood search
    /// by estimated cost.
    Exhaustive,
    /// Exhaustive pairwise scan only.
    Pairwise,
    /// Neighbourhood search only (length at most 28).
    Neighbourhood,
    /// Orbit-reduced computation from the generating data.
    OrbitReduced {
        action: &'a DoublewordAction,
        reps: &'a [Doubleword],
    },
}

/// Closest pair among rows `rows` against all later words: `(d, i, j)` with
/// the smallest `d`, ties broken by `(i, j)`. Stops once `d == floor`.
pub fn pairwise_min_rows(words: &[u64], rows: Range<usize>, floor: u32) -> Option<(u32, usize, usize)> {
    let mut best: Option<(u32, usize, usize)> = None;
    for i in rows {
        let a = words[i];
        for (j, &b) in words.iter().enumerate().skip(i + 1) {
            let d = distance(a, b);
            if best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, i, j));
                if d <= floor {
                    return best;
                }
            }
        }
    }
    best
}

/// Outcome of a bounded neighbourhood search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighbourhood {
    /// Closest pair `(d, a, b)` as raw words.
    Found(u32, u64, u64),
    /// No pair within `radius`; the cost cap stopped the search.
    Cleared { radius: u32 },
    /// No pair at any distance: the code has at most one word.
    Exhausted,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Cost weight of one table probe relative to one pairwise distance.
const PROBE_COST: u64 = 4;

/// Probes Hamming spheres of radius 1, 2, … around every word until a second
/// code word is hit, or until the next sphere would push the probe count
/// past `max_cost`.
pub fn neighbourhood_min(code: &Code, max_cost: u64) -> Result<Neighbourhood, CodeError> {
    let n = code.length;
    if n > MAX_NEIGHBOURHOOD_LEN {
        return Err(CodeError::LengthOutOfRange {
            length: n,
            max: MAX_NEIGHBOURHOOD_LEN,
        });
    }
    if code.size() <= 1 {
        return Ok(Neighbourhood::Exhausted);
    }
    let mut table = vec![0u64; (1usize << n).div_ceil(64)];
    for &w in &code.words {
        table[(w >> 6) as usize] |= 1 << (w & 63);
    }
    let member = |w: u64| table[(w >> 6) as usize] >> (w & 63) & 1 == 1;
    let size = code.size() as u64;
    let mut spent = 0u64;
    for r in 1..=n as u32 {
        let layer = binomial(n as u64, r as u64).saturating_mul(size).saturating_mul(PROBE_COST);
        if spent.saturating_add(layer) > max_cost {
            return Ok(Neighbourhood::Cleared { radius: r - 1 });
        }
        spent += layer;
        let top = 1u64 << n;
        for &a in &code.words {
            // patterns of weight r in increasing order
            let mut pat = (1u64 << r) - 1;
            while pat < top {
                if member(a ^ pat) {
                    return Ok(Neighbourhood::Found(r, a, a ^ pat));
                }
                let c = pat & pat.wrapping_neg();
                let rr = pat + c;
                pat = (((rr ^ pat) >> 2) / c) | rr;
            }
        }
    }
    // two distinct words always differ somewhere
    unreachable!("distinct words of length {n} must meet within radius {n}")
}

fn report_from_pair(code: &Code, found: Option<(u32, u64, u64)>, method: Method) -> Result<VerificationReport, CodeError> {
    let witness = match found {
        Some((_, a, b)) => Some((Codeword::new(code.length, a)?, Codeword::new(code.length, b)?)),
        None => None,
    };
    Ok(VerificationReport {
        length: code.length,
        size: code.size(),
        min_distance: found.map(|(d, _, _)| d).into(),
        witness,
        method,
        orbits: Vec::new(),
    })
}

/// Exact minimum distance, single-threaded.
pub fn verify_code(code: &Code, mode: VerifyMode<'_>) -> Result<VerificationReport, CodeError> {
    verify_code_with(code, mode, |words, floor| {
        pairwise_min_rows(words, 0..words.len(), floor)
    })
}

/// Like [`verify_code`], with the pairwise scan supplied by the caller.
///
/// `pairwise(words, floor)` must return what
/// `pairwise_min_rows(words, 0..words.len(), floor)` returns.
pub fn verify_code_with<P>(code: &Code, mode: VerifyMode<'_>, pairwise: P) -> Result<VerificationReport, CodeError>
where
    P: Fn(&[u64], u32) -> Option<(u32, usize, usize)>,
{
    if code.is_empty() {
        return Err(CodeError::Empty);
    }
    let words = &code.words;
    let by_index = |p: Option<(u32, usize, usize)>| p.map(|(d, i, j)| (d, words[i], words[j]));
    match mode {
        VerifyMode::Pairwise => report_from_pair(code, by_index(pairwise(words, 1)), Method::Pairwise),
        VerifyMode::Neighbourhood => match neighbourhood_min(code, u64::MAX)? {
            Neighbourhood::Found(d, a, b) => report_from_pair(code, Some((d, a, b)), Method::Neighbourhood),
            _ => report_from_pair(code, None, Method::Neighbourhood),
        },
        VerifyMode::Exhaustive => {
            let m = code.size() as u64;
            let pair_cost = m.saturating_mul(m.saturating_sub(1)) / 2;
            if code.length > MAX_NEIGHBOURHOOD_LEN {
                return report_from_pair(code, by_index(pairwise(words, 1)), Method::Pairwise);
            }
            match neighbourhood_min(code, pair_cost)? {
                Neighbourhood::Found(d, a, b) => report_from_pair(code, Some((d, a, b)), Method::Neighbourhood),
                Neighbourhood::Exhausted => report_from_pair(code, None, Method::Neighbourhood),
                Neighbourhood::Cleared { radius } => {
                    report_from_pair(code, by_index(pairwise(words, radius + 1)), Method::Pairwise)
                }
            }
        }
        VerifyMode::OrbitReduced { action, reps } => verify_orbit_reduced(code, action, reps),
    }
}

/// Minimum over each orbit's intra distance and each pair's inter distance.
/// Each inter distance fixes the representative of the larger orbit and
/// scans the smaller one.
fn verify_orbit_reduced(
    code: &Code,
    action: &DoublewordAction,
    reps: &[Doubleword],
) -> Result<VerificationReport, CodeError> {
    if reps.is_empty() {
        return Err(CodeError::NoReps);
    }
    if action.n() != code.length {
        return Err(CodeError::GeneratorMismatch("group acts on a different length"));
    }
    let mut members = Vec::with_capacity(reps.len());
    let mut orbits = Vec::with_capacity(reps.len());
    for &x in reps {
        let m = action.orbit_halves(x)?;
        orbits.push(OrbitSummary {
            rep: Doubleword::from_codeword(Codeword::new(code.length, m[0])?)?,
            size: m.len(),
            intra: min_distance_to(m[0], &m).map(|(d, _)| d).into(),
        });
        members.push(m);
    }
    check_distinct_orbits(&orbits)?;
    if orbits.iter().map(|o| o.size).sum::<usize>() != code.size() {
        return Err(CodeError::GeneratorMismatch("orbit sizes do not sum to the code size"));
    }
    if !members.iter().flatten().all(|&w| code.contains(w)) {
        return Err(CodeError::GeneratorMismatch("an orbit member is not in the code"));
    }

    let mut best: Option<(u32, u64, u64)> = None;
    let mut consider = |cand: Option<(u32, u64)>, anchor: u64| {
        if let Some((d, b)) = cand {
            if best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, anchor, b));
            }
        }
    };
    for m in &members {
        consider(min_distance_to(m[0], m), m[0]);
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (small, large) = if members[i].len() <= members[j].len() { (i, j) } else { (j, i) };
            let anchor = members[large][0];
            consider(min_distance_to(anchor, &members[small]), anchor);
        }
    }
    let mut report = report_from_pair(code, best, Method::OrbitReduced)?;
    report.orbits = orbits;
    Ok(report)
}

/// Appends an overall parity bit as coordinate `n + 1`.
///
/// `report` must be a verification of `code` with odd minimum distance `d`;
/// the result has minimum distance `d + 1`.
pub fn extend_parity(code: &Code, report: &VerificationReport) -> Result<Code, CodeError> {
    if report.length != code.length || report.size != code.size() {
        return Err(CodeError::ReportMismatch {
            report_length: report.length,
            report_size: report.size,
            length: code.length,
            size: code.size(),
        });
    }
    let d = match report.min_distance {
        Distance::Finite(d) if d % 2 == 1 => d,
        other => return Err(CodeError::NotOdd(other)),
    };
    if code.length + 1 > MAX_CODEWORD_LEN {
        return Err(CodeError::LengthOutOfRange {
            length: code.length + 1,
            max: MAX_CODEWORD_LEN,
        });
    }
    let words = code
        .words
        .iter()
        .map(|&w| (w << 1) | (w.count_ones() & 1) as u64)
        .collect();
    Ok(Code::new(code.length + 1, words)?.with_claim(d + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortened {
    pub code: Code,
    /// 1-based coordinate that was deleted.
    pub coordinate: usize,
    /// Value the retained words had there.
    pub value: bool,
    pub retained: usize,
}

fn count_ones_at(code: &Code, coordinate: usize) -> usize {
    let shift = code.length - coordinate;
    code.words.iter().filter(|&&w| w >> shift & 1 == 1).count()
}

fn shorten_at(code: &Code, coordinate: usize, value: bool) -> Result<Shortened, CodeError> {
    let shift = code.length - coordinate;
    let low = low_mask(shift);
    let words: Vec<u64> = code
        .words
        .iter()
        .filter(|&&w| (w >> shift & 1 == 1) == value)
        .map(|&w| ((w >> (shift + 1)) << shift) | (w & low))
        .collect();
    let retained = words.len();
    let mut short = Code::new(code.length - 1, words)?;
    short.claimed_min_distance = code.claimed_min_distance;
    Ok(Shortened {
        code: short,
        coordinate,
        value,
        retained,
    })
}

fn check_shortenable(code: &Code, coordinate: usize) -> Result<(), CodeError> {
    if code.is_empty() {
        return Err(CodeError::Empty);
    }
    if code.length < 2 {
        return Err(CodeError::LengthOutOfRange {
            length: code.length - 1,
            max: MAX_CODEWORD_LEN,
        });
    }
    if coordinate == 0 || coordinate > code.length {
        return Err(CodeError::CoordinateOutOfRange {
            coordinate,
            length: code.length,
        });
    }
    Ok(())
}

/// Keeps the words holding the majority value at `coordinate` (0 on a tie)
/// and deletes that coordinate.
pub fn shorten(code: &Code, coordinate: usize) -> Result<Shortened, CodeError> {
    check_shortenable(code, coordinate)?;
    let ones = count_ones_at(code, coordinate);
    shorten_at(code, coordinate, ones > code.size() - ones)
}

/// Shortens on the coordinate and value that retain the most words; ties go
/// to the lowest coordinate, then to value 0.
pub fn shorten_best(code: &Code) -> Result<Shortened, CodeError> {
    check_shortenable(code, 1)?;
    let mut best = (0usize, 1usize, false);
    for coordinate in 1..=code.length {
        let ones = count_ones_at(code, coordinate);
        let (count, value) = if ones > code.size() - ones { (ones, true) } else { (code.size() - ones, false) };
        if count > best.0 {
            best = (count, coordinate, value);
        }
    }
    shorten_at(code, best.1, best.2)
}
