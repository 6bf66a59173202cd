//! Bounded-gap factor recurrence for symbol sequences, and a translate-limit
//! search between packings.
//!
//! A finite window of a bi-infinite symbol sequence is scanned for its
//! length-`L` factors; a sequence window certifies recurrence operationally
//! when every factor reappears within a bounded gap. The 2D counterpart
//! searches for a translation making one packing match another near the
//! origin.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::packing::{self, Packing, PackingError};
use crate::vec2::Point;

#[derive(Clone, Debug, PartialEq)]
pub enum SequenceError {
    EmptyWindow,
    /// The window must hold at least `4 L` symbols to say anything about
    /// length-`L` factors.
    WindowTooShort { len: usize, needed: usize },
    SymbolOutOfRange,
    BadPeriod,
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::EmptyWindow => write!(f, "sequence window is empty"),
            SequenceError::WindowTooShort { len, needed } => {
                write!(f, "window of {len} symbols is shorter than required {needed}")
            }
            SequenceError::SymbolOutOfRange => write!(f, "symbol index outside the alphabet"),
            SequenceError::BadPeriod => write!(f, "window is inconsistent with the period"),
        }
    }
}

impl core::error::Error for SequenceError {}

/// How a sequence window was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorTag {
    Explicit,
    Periodic { period: usize },
    ThueMorse,
}

/// A finite window of a bi-infinite symbol sequence over a finite alphabet.
/// Symbols are indices into `alphabet`; `origin` is the sequence index of
/// the first window entry.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicSequence {
    alphabet: Vec<char>,
    symbols: Vec<u8>,
    origin: i64,
    generator: GeneratorTag,
}

impl SymbolicSequence {
    pub fn explicit(
        alphabet: Vec<char>,
        symbols: Vec<u8>,
        origin: i64,
    ) -> Result<SymbolicSequence, SequenceError> {
        if symbols.is_empty() {
            return Err(SequenceError::EmptyWindow);
        }
        if symbols.iter().any(|&s| s as usize >= alphabet.len()) {
            return Err(SequenceError::SymbolOutOfRange);
        }
        Ok(SymbolicSequence {
            alphabet,
            symbols,
            origin,
            generator: GeneratorTag::Explicit,
        })
    }

    /// Repeat `pattern` until the window holds `len` symbols.
    pub fn periodic(
        alphabet: Vec<char>,
        pattern: &[u8],
        len: usize,
    ) -> Result<SymbolicSequence, SequenceError> {
        if pattern.is_empty() || len == 0 {
            return Err(SequenceError::BadPeriod);
        }
        if pattern.iter().any(|&s| s as usize >= alphabet.len()) {
            return Err(SequenceError::SymbolOutOfRange);
        }
        let symbols: Vec<u8> = (0..len).map(|i| pattern[i % pattern.len()]).collect();
        Ok(SymbolicSequence {
            alphabet,
            symbols,
            origin: 0,
            generator: GeneratorTag::Periodic {
                period: pattern.len(),
            },
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn generator(&self) -> &GeneratorTag {
        &self.generator
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Render the window using the alphabet characters.
    pub fn rendered(&self) -> String {
        self.symbols
            .iter()
            .map(|&s| self.alphabet[s as usize])
            .collect()
    }
}

/// `t(n)` = parity of the binary digit sum of `n`.
pub fn thue_morse_term(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

/// The first `len` terms `t(0 .. len)` over the alphabet `{0, 1}`.
pub fn thue_morse_prefix(len: usize) -> SymbolicSequence {
    assert!(len >= 1, "prefix length must be at least 1");
    SymbolicSequence {
        alphabet: alloc::vec!['0', '1'],
        symbols: (0..len as u64).map(thue_morse_term).collect(),
        origin: 0,
        generator: GeneratorTag::ThueMorse,
    }
}

/// Worst recurrence gaps of the length-`L` factors of a window.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceReport {
    pub factor_len: usize,
    /// Largest gap between consecutive occurrences over all factors.
    pub max_gap: usize,
    /// Worst gap per factor (keyed by the factor's symbol string).
    pub per_factor: BTreeMap<Vec<u8>, usize>,
    /// Every factor recurs with gap at most half the window.
    pub bounded: bool,
}

/// Scan all length-`L` factors of the window and record, per factor, the
/// maximum gap between consecutive occurrences. Factors seen only once get
/// gap equal to the window length (they never recur inside the window).
pub fn recurrence_gaps(
    s: &SymbolicSequence,
    factor_len: usize,
) -> Result<RecurrenceReport, SequenceError> {
    if factor_len == 0 {
        return Err(SequenceError::BadPeriod);
    }
    let len = s.symbols.len();
    if len < 4 * factor_len {
        return Err(SequenceError::WindowTooShort {
            len,
            needed: 4 * factor_len,
        });
    }
    // (last position, worst gap, occurrence count) per factor, one pass
    let mut stats: BTreeMap<&[u8], (usize, usize, usize)> = BTreeMap::new();
    for i in 0..=(len - factor_len) {
        let factor = &s.symbols[i..i + factor_len];
        match stats.get_mut(factor) {
            Some((last, worst, count)) => {
                let gap = i - *last;
                if gap > *worst {
                    *worst = gap;
                }
                *last = i;
                *count += 1;
            }
            None => {
                stats.insert(factor, (i, 0, 1));
            }
        }
    }
    // a factor that never recurs gets the whole window as its gap
    let per_factor: BTreeMap<Vec<u8>, usize> = stats
        .into_iter()
        .map(|(factor, (_, worst, count))| {
            (factor.to_vec(), if count < 2 { len } else { worst })
        })
        .collect();
    let max_gap = per_factor.values().copied().max().unwrap_or(0);
    Ok(RecurrenceReport {
        factor_len,
        max_gap,
        bounded: max_gap <= len / 2,
        per_factor,
    })
}

/// Grid search for a translation `t` such that `host` translated by `t`
/// matches `pattern` near the origin: every element (of either side) meeting
/// `B(0, r)` must pair with a partner within `epsilon` in body Hausdorff
/// distance. The grid pitch is `epsilon / 2`; `None` means no witness at
/// this resolution.
pub fn limit_translate_search(
    host: &Packing,
    pattern: &Packing,
    r: f64,
    epsilon: f64,
) -> Result<Option<Point>, PackingError> {
    if !(epsilon > 0.0) || !(r > 0.0) {
        return Err(PackingError::BadParameter("r and epsilon must be positive"));
    }
    if host.body() != pattern.body() {
        return Err(PackingError::BodyMismatch);
    }
    let pitch = 0.5 * epsilon;
    let (w, h) = (host.window().width(), host.window().height());
    let nx = (w / pitch).ceil() as i64;
    let ny = (h / pitch).ceil() as i64;
    for j in 0..ny {
        for i in 0..nx {
            let t = Point::new(-0.5 * w + i as f64 * pitch, -0.5 * h + j as f64 * pitch);
            let moved = match host.translated(t) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let report = packing::matching_report(&moved, pattern, epsilon, r)?;
            if report.verdict {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn thue_morse_small_values() {
        assert_eq!(thue_morse_term(0), 0);
        assert_eq!(thue_morse_term(3), 0);
        let prefix = thue_morse_prefix(8);
        assert_eq!(prefix.symbols(), &[0, 1, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn thue_morse_substitution_oracle() {
        // t is the fixed point of 0 -> 01, 1 -> 10; cross-check the digit-sum
        // formula against the substitution construction
        let mut word = vec![0u8];
        while word.len() < 1 << 12 {
            let mut next = Vec::with_capacity(word.len() * 2);
            for &s in &word {
                next.push(s);
                next.push(1 - s);
            }
            word = next;
        }
        let prefix = thue_morse_prefix(1 << 12);
        assert_eq!(prefix.symbols(), &word[..]);
    }

    #[test]
    fn constant_sequence_gaps() {
        let s = SymbolicSequence::periodic(vec!['0'], &[0], 64).unwrap();
        let rep = recurrence_gaps(&s, 3).unwrap();
        assert_eq!(rep.max_gap, 1);
        assert!(rep.bounded);
    }

    #[test]
    fn alternating_sequence_gaps() {
        let s = SymbolicSequence::periodic(vec!['0', '1'], &[0, 1], 64).unwrap();
        let rep = recurrence_gaps(&s, 2).unwrap();
        assert_eq!(rep.max_gap, 2);
        // every length-2 factor of 0101... is 01 or 10
        assert_eq!(rep.per_factor.len(), 2);
    }

    #[test]
    fn periodic_gap_never_exceeds_period() {
        for period in 1..=6usize {
            let pattern: Vec<u8> = (0..period as u8).collect();
            let alphabet: Vec<char> = (0..period as u8).map(|i| (b'a' + i) as char).collect();
            let s = SymbolicSequence::periodic(alphabet, &pattern, 16 * period).unwrap();
            for factor_len in 1..=3usize {
                let rep = recurrence_gaps(&s, factor_len).unwrap();
                assert!(
                    rep.max_gap <= period,
                    "period {period}, L {factor_len}: gap {}",
                    rep.max_gap
                );
            }
        }
    }

    #[test]
    fn window_length_precondition() {
        let s = SymbolicSequence::periodic(vec!['0', '1'], &[0, 1], 8).unwrap();
        assert!(matches!(
            recurrence_gaps(&s, 3),
            Err(SequenceError::WindowTooShort { .. })
        ));
    }
}
