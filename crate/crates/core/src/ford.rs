//! The Ford sequence (lex-least binary de Bruijn sequence), its two
//! constructions, and its breakpoint decomposition into segments `ℓ_i`.
//!
//! `F_n` is the concatenation, in lexicographic order, of the Lyndon words
//! whose length divides `n`. Apart from the leading `0` and trailing `1`,
//! those factors come grouped by their leading zero run: the group with run
//! `i` is the segment `ℓ_i`, and `ℓ_0 = 1`. The suffix `K_m = ℓ_m … ℓ_1 ℓ_0`
//! and `L_m = ℓ_m … ℓ_1` are the strings whose skew and length the rest of
//! the crate counts.

use crate::error::{Error, Result};
use crate::parallel::{self, Execution};
use crate::words::BinaryWord;

pub const DEFAULT_MAX_ORDER: u32 = 28;
pub const DEFAULT_GREEDY_MAX_ORDER: u32 = 14;
/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "LEXFORD_MAX_ORDER";
/// Windows are held in a `u64` and lengths in `usize`.
const HARD_MAX_ORDER: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: u32,
    pub greedy_max_order: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
            greedy_max_order: DEFAULT_GREEDY_MAX_ORDER,
        }
    }
}

impl Limits {
    /// Defaults, with `max_order` taken from `LEXFORD_MAX_ORDER` when set to
    /// a valid integer. Values above 40 are clamped.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(cap) = std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
        {
            limits.max_order = cap.min(HARD_MAX_ORDER);
        }
        limits
    }

    pub fn check_order(&self, order: u32) -> Result<()> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if order > self.max_order.min(HARD_MAX_ORDER) {
            return Err(Error::OrderTooLarge {
                order,
                cap: self.max_order.min(HARD_MAX_ORDER),
            });
        }
        Ok(())
    }

    pub fn check_greedy_order(&self, order: u32) -> Result<()> {
        self.check_order(order)?;
        if order > self.greedy_max_order {
            return Err(Error::GreedyOrderTooLarge {
                order,
                cap: self.greedy_max_order,
            });
        }
        Ok(())
    }
}

/// A Lyndon factor of length at most 64: `len` symbols spelled by `value`,
/// most significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub value: u64,
    pub len: u32,
}

impl Factor {
    pub fn leading_zeros(&self) -> u32 {
        self.len - (64 - self.value.leading_zeros())
    }

    pub fn to_word(&self) -> BinaryWord {
        BinaryWord::from_value(self.value, self.len as usize)
    }
}

/// Lyndon words whose length divides `order`, in lexicographic order,
/// produced by the prenecklace successor rule.
pub struct LyndonFactors {
    order: usize,
    // 1-based; a[0] unused
    a: Vec<u8>,
    started: bool,
    done: bool,
}

impl LyndonFactors {
    pub fn new(order: u32) -> Self {
        assert!((1..=64).contains(&order));
        Self {
            order: order as usize,
            a: vec![0; order as usize + 1],
            started: false,
            done: false,
        }
    }

    fn emit(&self, p: usize) -> Factor {
        let value = self.a[1..=p]
            .iter()
            .fold(0u64, |acc, &s| (acc << 1) | u64::from(s));
        Factor {
            value,
            len: p as u32,
        }
    }
}

impl Iterator for LyndonFactors {
    type Item = Factor;

    fn next(&mut self) -> Option<Factor> {
        if !self.started {
            self.started = true;
            return Some(self.emit(1));
        }
        let n = self.order;
        while !self.done {
            let mut i = n;
            while i > 0 && self.a[i] == 1 {
                i -= 1;
            }
            if i == 0 {
                self.done = true;
                break;
            }
            self.a[i] = 1;
            for j in i + 1..=n {
                self.a[j] = self.a[j - i];
            }
            if n.is_multiple_of(i) {
                return Some(self.emit(i));
            }
        }
        None
    }
}

pub fn lyndon_words_dividing(order: u32) -> Result<Vec<BinaryWord>> {
    lyndon_words_dividing_with(order, &Limits::default())
}

pub fn lyndon_words_dividing_with(order: u32, limits: &Limits) -> Result<Vec<BinaryWord>> {
    limits.check_order(order)?;
    Ok(LyndonFactors::new(order).map(|f| f.to_word()).collect())
}

/// A binary de Bruijn sequence of order `n` that is lexicographically least.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FordSequence {
    order: u32,
    word: BinaryWord,
}

impl FordSequence {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn into_word(self) -> BinaryWord {
        self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Wraps an arbitrary word without checking it. Only for feeding
    /// deliberately corrupted input to the verifier.
    #[doc(hidden)]
    pub fn from_word_unchecked(order: u32, word: BinaryWord) -> Self {
        Self { order, word }
    }
}

pub fn ford_by_concatenation(order: u32) -> Result<FordSequence> {
    ford_by_concatenation_with(order, &Limits::default())
}

pub fn ford_by_concatenation_with(order: u32, limits: &Limits) -> Result<FordSequence> {
    limits.check_order(order)?;
    let mut word = BinaryWord::with_capacity(1usize << order);
    for factor in LyndonFactors::new(order) {
        word.push_value(factor.value, factor.len as usize);
    }
    debug_assert_eq!(word.len(), 1usize << order);
    Ok(FordSequence { order, word })
}

pub fn ford_by_greedy(order: u32) -> Result<FordSequence> {
    ford_by_greedy_with(order, &Limits::default())
}

/// Builds `F_n` one bit at a time from `0^n`, trying `0` before `1` and
/// accepting a bit only if the window it closes is new; dead ends backtrack.
///
/// The search runs over the linear string of length `2^n + n - 1`. Every
/// such string with distinct windows is an Eulerian circuit of the de Bruijn
/// graph, so its last `n - 1` bits repeat its first, and its first `2^n`
/// bits are a cyclic de Bruijn sequence.
pub fn ford_by_greedy_with(order: u32, limits: &Limits) -> Result<FordSequence> {
    limits.check_greedy_order(order)?;
    let n = order as usize;
    let windows = 1usize << n;
    let mask = (windows - 1) as u64;
    let target = windows + n - 1;

    let mut bits = vec![0u8; target];
    let mut window_at = vec![0u64; target];
    let mut next_bit = vec![0u8; target];
    let mut seen = vec![false; windows];
    seen[0] = true;

    let mut pos = n;
    while pos < target {
        let mut placed = false;
        while next_bit[pos] <= 1 {
            let b = next_bit[pos];
            next_bit[pos] += 1;
            let w = ((window_at[pos - 1] << 1) | u64::from(b)) & mask;
            if !seen[w as usize] {
                seen[w as usize] = true;
                window_at[pos] = w;
                bits[pos] = b;
                placed = true;
                break;
            }
        }
        if placed {
            pos += 1;
        } else {
            next_bit[pos] = 0;
            pos -= 1;
            assert!(
                pos >= n,
                "greedy search exhausted without a de Bruijn sequence"
            );
            seen[window_at[pos] as usize] = false;
        }
    }

    let word = BinaryWord::from_bits(bits[..windows].iter().map(|&b| b == 1));
    Ok(FordSequence { order, word })
}

/// Whether the `2^n` cyclic windows of length `n` in `word` are distinct.
pub fn is_de_bruijn(word: &BinaryWord, order: u32) -> Result<bool> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if order > HARD_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            cap: HARD_MAX_ORDER,
        });
    }
    let expected = 1u64 << order;
    if word.len() as u64 != expected {
        return Err(Error::LengthMismatch {
            order,
            expected,
            actual: word.len() as u64,
        });
    }
    let n = order as usize;
    let len = word.len();
    let mask = expected - 1;
    let mut seen = vec![0u64; (expected as usize).div_ceil(64)];
    let mut window = 0u64;
    // Prime with the first n - 1 symbols, then walk every start cyclically.
    for i in 0..n - 1 {
        window = (window << 1) | u64::from(word.bit(i));
    }
    for start in 0..len {
        let incoming = word.bit((start + n - 1) % len);
        window = ((window << 1) | u64::from(incoming)) & mask;
        let (slot, bit) = ((window / 64) as usize, window % 64);
        if seen[slot] >> bit & 1 == 1 {
            return Ok(false);
        }
        seen[slot] |= 1 << bit;
    }
    Ok(true)
}

/// `F_n` split at its breakpoints into `ℓ_{n-1}, …, ℓ_1, ℓ_0`.
#[derive(Debug, Clone)]
pub struct FordDecomposition {
    sequence: FordSequence,
    /// `segments[i]` is `ℓ_i` for `0 <= i < n`.
    segments: Vec<BinaryWord>,
    /// Start of `ℓ_i` within `F_n`.
    offsets: Vec<usize>,
    /// Lengths of the Lyndon factors making up `ℓ_i`, in order.
    factor_lengths: Vec<Vec<u8>>,
}

static EMPTY: BinaryWord = BinaryWord::new();

impl FordDecomposition {
    pub fn order(&self) -> u32 {
        self.sequence.order
    }

    pub fn sequence(&self) -> &FordSequence {
        &self.sequence
    }

    /// `ℓ_i`; the empty word for `i >= n`.
    pub fn segment(&self, i: u32) -> &BinaryWord {
        self.segments.get(i as usize).unwrap_or(&EMPTY)
    }

    /// Start position of `ℓ_i` in `F_n`, or `None` for `i >= n`.
    pub fn offset(&self, i: u32) -> Option<usize> {
        self.offsets.get(i as usize).copied()
    }

    /// Segments paired with their index, from `ℓ_{n-1}` down to `ℓ_0`.
    pub fn segments(&self) -> impl Iterator<Item = (u32, &BinaryWord)> + '_ {
        (0..self.segments.len())
            .rev()
            .map(move |i| (i as u32, &self.segments[i]))
    }

    /// The Lyndon factors of `ℓ_i`, as subwords.
    pub fn factors(&self, i: u32) -> Vec<BinaryWord> {
        let Some(lengths) = self.factor_lengths.get(i as usize) else {
            return Vec::new();
        };
        let seg = &self.segments[i as usize];
        let mut at = 0;
        lengths
            .iter()
            .map(|&l| {
                let f = seg.slice(at, at + l as usize);
                at += l as usize;
                f
            })
            .collect()
    }

    fn top(&self, m: u32) -> usize {
        m.min(self.order() - 1) as usize
    }

    /// `K_m = ℓ_m … ℓ_1 ℓ_0`.
    pub fn suffix_k(&self, m: u32) -> BinaryWord {
        let word = self.sequence.word();
        word.slice(self.offsets[self.top(m)], word.len())
    }

    /// `L_m = ℓ_m … ℓ_1` (`m >= 1`); `K_m` without its final `1`.
    pub fn segment_l(&self, m: u32) -> BinaryWord {
        let word = self.sequence.word();
        word.slice(self.offsets[self.top(m)], self.offsets[0])
    }

    /// `(skew, length)` of `K_m` without materializing it.
    pub fn suffix_k_stats(&self, m: u32) -> (i64, u64) {
        let k = self.suffix_k(m);
        (k.skew(), k.len() as u64)
    }

    /// 1-based positions closing each breakpoint, labelled by `i`: the end
    /// of `0^i 1^(n-i)` for `1 <= i <= n-1`, the initial `0` as `n` and the
    /// final `1` as `0`. Sorted by position.
    pub fn breakpoints(&self) -> Vec<(usize, u32)> {
        let n = self.order();
        let mut out = vec![(1, n)];
        for i in (1..n).rev() {
            // ℓ_i ends where ℓ_{i-1} starts.
            out.push((self.offsets[i as usize - 1], i));
        }
        out.push((self.sequence.len(), 0));
        out
    }
}

pub fn decompose(sequence: &FordSequence) -> FordDecomposition {
    match try_decompose(sequence) {
        Ok(d) => d,
        Err(e) => panic!("order {}: {e}", sequence.order()),
    }
}

/// Groups the Lyndon factors of `F_n` by zero run and cross-checks the
/// boundaries against the marker strings `0^i 1^(n-i)`.
pub fn try_decompose(sequence: &FordSequence) -> Result<FordDecomposition> {
    let n = sequence.order;
    let word = &sequence.word;
    let violation = |msg: String| Err(Error::InvariantViolation(msg));
    if n == 0 || n > HARD_MAX_ORDER || word.len() != 1usize << n {
        return violation(format!("word of length {} is not of order {n}", word.len()));
    }

    let top = n as usize - 1;
    let mut segments = vec![BinaryWord::new(); n as usize];
    let mut offsets = vec![usize::MAX; n as usize];
    let mut factor_lengths: Vec<Vec<u8>> = vec![Vec::new(); n as usize];

    let lengths: Vec<usize> = LyndonFactors::new(n).map(|f| f.len as usize).collect();
    let last = lengths.len() - 1;
    let mut at = 0;
    let mut previous_run = usize::MAX;
    for (idx, &len) in lengths.iter().enumerate() {
        let start = at;
        at += len;
        if idx == 0 {
            if word.bit(0) {
                return violation("sequence does not start with 0".into());
            }
            continue;
        }
        let factor = word.slice(start, at);
        let run = if idx == last {
            if factor.len() != 1 || !factor.bit(0) {
                return violation("sequence does not end with 1".into());
            }
            0
        } else {
            factor.max_zero_run()
        };
        if run > top || run > previous_run || (run == 0 && idx != last) {
            return violation(format!(
                "factor {factor} at {start} has zero run {run} out of order"
            ));
        }
        if run != previous_run {
            offsets[run] = start;
            previous_run = run;
        }
        segments[run].extend_from(&factor);
        factor_lengths[run].push(len as u8);
    }

    // Marker scan: each 0^i 1^(n-i) occurs exactly once as a window.
    let nn = n as usize;
    let mut marker_end = vec![usize::MAX; nn + 1];
    marker_end[nn] = 1;
    let mask = (1u64 << n) - 1;
    let mut window = 0u64;
    for p in 0..word.len() {
        window = ((window << 1) | u64::from(word.bit(p))) & mask;
        if p + 1 < nn || window == 0 || window == mask || (window + 1) & window != 0 {
            continue;
        }
        let ones = (window + 1).trailing_zeros() as usize;
        let i = nn - ones;
        if marker_end[i] == usize::MAX {
            marker_end[i] = p + 1;
        }
    }
    for i in 1..nn {
        let (start, end) = (marker_end[i + 1], marker_end[i]);
        if start == usize::MAX || end == usize::MAX {
            return violation(format!("marker for segment {i} not found"));
        }
        if offsets[i] != start || offsets[i] + segments[i].len() != end {
            return violation(format!(
                "segment {i}: factor grouping gives [{}, {}), markers give [{start}, {end})",
                offsets[i],
                offsets[i].wrapping_add(segments[i].len())
            ));
        }
    }
    if offsets[0] != word.len() - 1 || (nn > 1 && marker_end[1] != offsets[0]) {
        return violation("final segment is not the last symbol".into());
    }

    Ok(FordDecomposition {
        sequence: sequence.clone(),
        segments,
        offsets,
        factor_lengths,
    })
}

pub fn suffix_k(sequence: &FordSequence, m: u32) -> BinaryWord {
    decompose(sequence).suffix_k(m)
}

pub fn segment_l(sequence: &FordSequence, m: u32) -> BinaryWord {
    decompose(sequence).segment_l(m)
}

/// Skew and length of `K_m` for `n = 1..=max_order`, `m = 0..max_order`;
/// cells with `m >= n` are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakpointTables {
    pub max_order: u32,
    pub skew: Vec<Vec<Option<i64>>>,
    pub length: Vec<Vec<Option<u64>>>,
}

pub fn breakpoint_tables(
    max_order: u32,
    limits: &Limits,
    execution: Execution,
) -> Result<BreakpointTables> {
    limits.check_order(max_order)?;
    let rows = parallel::map_collect(execution, (1..=max_order).collect(), |n| {
        let d = decompose(&ford_by_concatenation_with(n, limits)?);
        let cells: Vec<(Option<i64>, Option<u64>)> = (0..max_order)
            .map(|m| {
                if m < n {
                    let (s, l) = d.suffix_k_stats(m);
                    (Some(s), Some(l))
                } else {
                    (None, None)
                }
            })
            .collect();
        Ok(cells)
    });
    let mut skew = Vec::new();
    let mut length = Vec::new();
    for row in rows {
        let row = row?;
        skew.push(row.iter().map(|c| c.0).collect());
        length.push(row.iter().map(|c| c.1).collect());
    }
    Ok(BreakpointTables {
        max_order,
        skew,
        length,
    })
}
