//! Packed binary words and the skew / Lyndon predicates defined on them.
//!
//! Symbols are ordered `0 < 1` everywhere, so the lexicographic order on
//! [`BinaryWord`] is the one under which the Ford sequence is least.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const LIMB_BITS: usize = 64;

/// A finite word over `{0, 1}`, packed 64 symbols per limb.
///
/// Symbol `i` lives in limb `i / 64` at bit `i % 64`. Bits past `len` in the
/// last limb are always zero, which keeps the derived `Eq` and `Hash` sound.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    limbs: Vec<u64>,
    len: usize,
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= LIMB_BITS {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl BinaryWord {
    pub const fn new() -> Self {
        Self {
            limbs: Vec::new(),
            len: 0,
        }
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            limbs: Vec::with_capacity(bits.div_ceil(LIMB_BITS)),
            len: 0,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut word = Self::new();
        for b in bits {
            word.push(b);
        }
        word
    }

    /// Word of length `len` spelled by the low `len` bits of `value`, most
    /// significant first. `from_value(0b011, 3)` is `011`.
    pub fn from_value(value: u64, len: usize) -> Self {
        let mut word = Self::with_capacity(len);
        word.push_value(value, len);
        word
    }

    /// `0^zeros 1^ones`
    pub fn block(zeros: usize, ones: usize) -> Self {
        let mut word = Self::with_capacity(zeros + ones);
        word.push_run(false, zeros);
        word.push_run(true, ones);
        word
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at `index`; panics when out of range.
    #[inline]
    pub fn bit(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "index {index} out of range for word of length {}",
            self.len
        );
        (self.limbs[index / LIMB_BITS] >> (index % LIMB_BITS)) & 1 == 1
    }

    #[inline]
    pub fn get(&self, index: usize) -> Option<bool> {
        (index < self.len).then(|| self.bit(index))
    }

    pub fn push(&mut self, bit: bool) {
        let offset = self.len % LIMB_BITS;
        if offset == 0 {
            self.limbs.push(0);
        }
        if bit {
            *self.limbs.last_mut().expect("limb just ensured") |= 1 << offset;
        }
        self.len += 1;
    }

    pub fn push_run(&mut self, bit: bool, count: usize) {
        let chunk = if bit { u64::MAX } else { 0 };
        let mut left = count;
        while left > 0 {
            let take = left.min(LIMB_BITS);
            self.push_lsb_first(chunk & low_mask(take), take);
            left -= take;
        }
    }

    /// Appends the low `len` bits of `value`, most significant first.
    pub fn push_value(&mut self, value: u64, len: usize) {
        assert!(len <= LIMB_BITS);
        if len == 0 {
            return;
        }
        let reversed = value.reverse_bits() >> (LIMB_BITS - len);
        self.push_lsb_first(reversed, len);
    }

    /// Appends `len` symbols taken from `chunk` starting at its bit 0.
    fn push_lsb_first(&mut self, chunk: u64, len: usize) {
        debug_assert!(len <= LIMB_BITS);
        if len == 0 {
            return;
        }
        let chunk = chunk & low_mask(len);
        let offset = self.len % LIMB_BITS;
        if offset == 0 {
            self.limbs.push(chunk);
        } else {
            *self.limbs.last_mut().expect("partial limb present") |= chunk << offset;
            if offset + len > LIMB_BITS {
                self.limbs.push(chunk >> (LIMB_BITS - offset));
            }
        }
        self.len += len;
    }

    /// Up to 64 symbols starting at `start`, symbol `start` in bit 0.
    fn chunk_lsb_first(&self, start: usize, len: usize) -> u64 {
        debug_assert!(len <= LIMB_BITS && start + len <= self.len);
        if len == 0 {
            return 0;
        }
        let limb = start / LIMB_BITS;
        let offset = start % LIMB_BITS;
        let mut value = self.limbs[limb] >> offset;
        if offset != 0 && offset + len > LIMB_BITS {
            value |= self.limbs[limb + 1] << (LIMB_BITS - offset);
        }
        value & low_mask(len)
    }

    /// The `len` symbols starting at `start` read as a big-endian integer
    /// (first symbol most significant). `len <= 64`.
    pub fn value_at(&self, start: usize, len: usize) -> u64 {
        assert!(len <= LIMB_BITS && start + len <= self.len);
        if len == 0 {
            return 0;
        }
        self.chunk_lsb_first(start, len).reverse_bits() >> (LIMB_BITS - len)
    }

    pub fn extend_from(&mut self, other: &BinaryWord) {
        let mut start = 0;
        while start < other.len {
            let take = (other.len - start).min(LIMB_BITS);
            self.push_lsb_first(other.chunk_lsb_first(start, take), take);
            start += take;
        }
    }

    pub fn concat<'a, I: IntoIterator<Item = &'a BinaryWord>>(words: I) -> Self {
        let mut out = Self::new();
        for w in words {
            out.extend_from(w);
        }
        out
    }

    /// Subword `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> BinaryWord {
        assert!(
            start <= end && end <= self.len,
            "slice {start}..{end} out of range"
        );
        let mut out = Self::with_capacity(end - start);
        let mut pos = start;
        while pos < end {
            let take = (end - pos).min(LIMB_BITS);
            out.push_lsb_first(self.chunk_lsb_first(pos, take), take);
            pos += take;
        }
        out
    }

    /// Rotation moving the first `k` symbols to the end.
    pub fn rotated(&self, k: usize) -> BinaryWord {
        if self.len == 0 {
            return self.clone();
        }
        let k = k % self.len;
        let mut out = self.slice(k, self.len);
        out.extend_from(&self.slice(0, k));
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    pub fn to_symbols(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    pub fn count_ones(&self) -> u64 {
        self.limbs.iter().map(|l| u64::from(l.count_ones())).sum()
    }

    pub fn count_zeros(&self) -> u64 {
        self.len as u64 - self.count_ones()
    }

    /// Zeros minus ones.
    pub fn skew(&self) -> i64 {
        self.count_zeros() as i64 - self.count_ones() as i64
    }

    /// Length of the longest run of zeros.
    pub fn max_zero_run(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        for b in self.iter() {
            if b {
                run = 0;
            } else {
                run += 1;
                best = best.max(run);
            }
        }
        best
    }

    pub fn contains(&self, pattern: &BinaryWord) -> bool {
        let p = pattern.len;
        if p == 0 {
            return true;
        }
        if p > self.len {
            return false;
        }
        if p <= LIMB_BITS {
            let target = pattern.chunk_lsb_first(0, p);
            (0..=self.len - p).any(|i| self.chunk_lsb_first(i, p) == target)
        } else {
            (0..=self.len - p).any(|i| self.slice(i, i + p) == *pattern)
        }
    }
}

impl Ord for BinaryWord {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let full = common / LIMB_BITS;
        for i in 0..=full {
            let valid = if i < full {
                LIMB_BITS
            } else {
                common % LIMB_BITS
            };
            if valid == 0 {
                break;
            }
            let mask = low_mask(valid);
            let a = self.limbs[i] & mask;
            let b = other.limbs[i] & mask;
            let diff = a ^ b;
            if diff != 0 {
                // Lowest differing bit is the first differing symbol.
                let bit = diff.trailing_zeros();
                return if (a >> bit) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BinaryWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 256 {
            write!(f, "BinaryWord(\"{self}\")")
        } else {
            write!(f, "BinaryWord(len = {})", self.len)
        }
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut word = Self::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => word.push(false),
                '1' => word.push(true),
                other => return Err(Error::InvalidSymbol(other)),
            }
        }
        Ok(word)
    }
}

/// Lengths of the Lyndon factors of `symbols` (Duval), in order.
pub(crate) fn lyndon_factor_lengths(symbols: &[u8]) -> Vec<usize> {
    let n = symbols.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && symbols[k] <= symbols[j] {
            if symbols[k] < symbols[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(j - k);
            i += j - k;
        }
    }
    out
}

pub fn skew(w: &BinaryWord) -> i64 {
    w.skew()
}

pub fn count_zeros(w: &BinaryWord) -> u64 {
    w.count_zeros()
}

pub fn count_ones(w: &BinaryWord) -> u64 {
    w.count_ones()
}

/// True iff `w` is strictly smaller than each of its nontrivial rotations,
/// i.e. `w` is aperiodic and the least member of its necklace.
pub fn is_lyndon(w: &BinaryWord) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let symbols = w.to_symbols();
    Ok(lyndon_factor_lengths(&symbols).first() == Some(&symbols.len()))
}

/// Lexicographically least rotation of `w`.
pub fn least_rotation(w: &BinaryWord) -> Result<BinaryWord> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(w.rotated(least_rotation_index(&w.to_symbols())))
}

/// Start index of the least rotation. Duval factorization of `s·s`: the
/// least rotation starts at the last factor boundary before `|s|`.
pub(crate) fn least_rotation_index(symbols: &[u8]) -> usize {
    let n = symbols.len();
    let doubled: Vec<u8> = symbols.iter().chain(symbols.iter()).copied().collect();
    let mut i = 0;
    let mut start = 0;
    while i < n {
        start = i;
        let mut j = i + 1;
        let mut k = i;
        while j < 2 * n && doubled[k] <= doubled[j] {
            if doubled[k] < doubled[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            i += j - k;
        }
    }
    start
}

/// Running skew of every nonempty prefix; entry `k - 1` is the skew of the
/// length-`k` prefix.
pub fn prefix_skew_profile(w: &BinaryWord) -> Vec<i64> {
    let mut acc = 0i64;
    w.iter()
        .map(|b| {
            acc += if b { -1 } else { 1 };
            acc
        })
        .collect()
}

/// Extreme prefix skews of a word, with the empty prefix (skew 0) included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkewExtremes {
    pub max: i64,
    pub min: i64,
}

impl SkewExtremes {
    /// Absolute value of the most negative prefix skew.
    pub fn min_magnitude(&self) -> u64 {
        self.min.unsigned_abs()
    }
}

pub fn skew_extremes(w: &BinaryWord) -> SkewExtremes {
    let mut acc = 0i64;
    let mut ext = SkewExtremes { max: 0, min: 0 };
    for b in w.iter() {
        acc += if b { -1 } else { 1 };
        ext.max = ext.max.max(acc);
        ext.min = ext.min.min(acc);
    }
    ext
}

/// Largest prefix skew; 0 for the empty word.
pub fn discrepancy(w: &BinaryWord) -> u64 {
    skew_extremes(w).max as u64
}
