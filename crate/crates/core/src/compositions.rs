//! Compositions into parts `>= 2`, their colored generalization, and the
//! parsing of `L_m` into primitives `0^i 1^j` that links them to the Ford
//! sequence.
//!
//! A primitive `0^i 1^j` maps to the colored integer `(i + j)` with color
//! `i - 1`; the multiset of those colored integers over `L_m` is what the
//! counts `c(m, n, k)` are read from.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ford::FordDecomposition;
use crate::recurrences;
use crate::words::{self, BinaryWord};

pub const MAX_ENUMERATION_TOTAL: u32 = 24;
pub const MAX_ENUMERATION_COLORS: u32 = 8;

fn check_caps(colors: u32, total: u32) -> Result<()> {
    if total > MAX_ENUMERATION_TOTAL {
        return Err(Error::EnumerationCap {
            what: "compositions",
            requested: total.into(),
            cap: MAX_ENUMERATION_TOTAL.into(),
        });
    }
    if colors > MAX_ENUMERATION_COLORS {
        return Err(Error::EnumerationCap {
            what: "composition colors",
            requested: colors.into(),
            cap: MAX_ENUMERATION_COLORS.into(),
        });
    }
    Ok(())
}

/// All compositions of `total` into parts `>= 2`, in lexicographic order of
/// the part tuples. `total = 0` has the single empty composition.
pub fn compositions_ge2(total: u32) -> Result<Vec<Vec<u32>>> {
    check_caps(0, total)?;
    fn go(left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 2..=left {
            if left - part == 1 {
                continue;
            }
            prefix.push(part);
            go(left - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, &mut Vec::new(), &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPart {
    pub value: u32,
    pub color: u32,
}

impl ColoredPart {
    pub fn plain(value: u32) -> Self {
        Self { value, color: 0 }
    }

    /// Colors run over `0 ..= min(value - 2, colors - 1)`.
    pub fn is_admissible(&self, colors: u32) -> bool {
        self.value >= 2 && colors >= 1 && self.color <= (self.value - 2).min(colors - 1)
    }
}

impl fmt::Display for ColoredPart {
    /// `5`, `5'`, `4''`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, "'".repeat(self.color as usize))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColoredComposition {
    pub parts: Vec<ColoredPart>,
}

impl ColoredComposition {
    pub fn plain(parts: &[u32]) -> Self {
        Self {
            parts: parts.iter().map(|&v| ColoredPart::plain(v)).collect(),
        }
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().map(|p| p.value).sum()
    }

    pub fn is_admissible(&self, colors: u32) -> bool {
        self.parts.iter().all(|p| p.is_admissible(colors))
    }
}

impl fmt::Display for ColoredComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

/// Every `colors`-colored composition of `total` into parts `>= 2`:
/// compositions in lexicographic order, then color vectors in ascending
/// nested order (first part outermost).
pub fn colored_compositions(colors: u32, total: u32) -> Result<Vec<ColoredComposition>> {
    if colors < 1 {
        return Err(Error::RecurrenceOrder {
            order: colors,
            min: 1,
        });
    }
    check_caps(colors, total)?;
    let mut out = Vec::new();
    for parts in compositions_ge2(total)? {
        let mut current = ColoredComposition::plain(&parts);
        expand_colors(colors, 0, &mut current, &mut out);
    }
    Ok(out)
}

fn expand_colors(
    colors: u32,
    index: usize,
    current: &mut ColoredComposition,
    out: &mut Vec<ColoredComposition>,
) {
    if index == current.parts.len() {
        out.push(current.clone());
        return;
    }
    let top = (current.parts[index].value - 2).min(colors - 1);
    for color in 0..=top {
        current.parts[index].color = color;
        expand_colors(colors, index + 1, current, out);
    }
    current.parts[index].color = 0;
}

/// `d(m, n)`: the number of `m`-colored compositions of `n` into parts
/// `>= 2`, from the recurrence `P^(m+1)_{n+m-1}` rather than enumeration.
/// `n = 0` counts the empty composition.
pub fn colored_composition_count(colors: u32, total: u32) -> Result<i64> {
    if colors < 1 {
        return Err(Error::RecurrenceOrder {
            order: colors,
            min: 1,
        });
    }
    if total == 0 {
        return Ok(1);
    }
    recurrences::colored_composition_term(colors + 1, u64::from(total + colors - 1))
}

/// A primitive `0^order 1^(length - order)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Primitive {
    pub order: u32,
    pub length: u32,
}

impl Primitive {
    /// The colored integer `length` with color `order - 1`.
    pub fn colored(&self) -> ColoredPart {
        ColoredPart {
            value: self.length,
            color: self.order - 1,
        }
    }
}

/// Splits `w` into maximal blocks `0^i 1^j`, `i, j >= 1`.
pub fn parse_primitives(w: &BinaryWord) -> Result<Vec<Primitive>> {
    let reject = || Error::NotPrimitiveConcatenation(w.to_string());
    let mut out = Vec::new();
    let mut pos = 0;
    let len = w.len();
    while pos < len {
        let start = pos;
        while pos < len && !w.bit(pos) {
            pos += 1;
        }
        let zeros = pos - start;
        while pos < len && w.bit(pos) {
            pos += 1;
        }
        let ones = pos - start - zeros;
        if zeros == 0 || ones == 0 {
            return Err(reject());
        }
        out.push(Primitive {
            order: zeros as u32,
            length: (zeros + ones) as u32,
        });
    }
    Ok(out)
}

/// Multiplicities of colored integers `k^(color)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimitiveMultiset {
    counts: BTreeMap<ColoredPart, u64>,
}

impl PrimitiveMultiset {
    pub fn from_primitives<I: IntoIterator<Item = Primitive>>(primitives: I) -> Self {
        let mut counts = BTreeMap::new();
        for p in primitives {
            *counts.entry(p.colored()).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn multiplicity(&self, value: u32, color: u32) -> u64 {
        self.counts
            .get(&ColoredPart { value, color })
            .copied()
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ColoredPart, u64)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Zeros contributed: a primitive of order `i` holds `i` of them.
    pub fn zeros(&self) -> u64 {
        self.iter().map(|(p, c)| u64::from(p.color + 1) * c).sum()
    }

    /// Ones contributed: `length - order` per primitive.
    pub fn ones(&self) -> u64 {
        self.iter()
            .map(|(p, c)| u64::from(p.value - p.color - 1) * c)
            .sum()
    }
}

fn require_order_two(d: &FordDecomposition, what: &'static str) -> Result<()> {
    if d.order() < 2 {
        return Err(Error::OrderTooSmall {
            order: d.order(),
            min: 2,
            what,
        });
    }
    Ok(())
}

/// `Ψ(m, n)`: the colored integers of the primitives of `L_m`.
pub fn psi_multiset(d: &FordDecomposition, m: u32) -> Result<PrimitiveMultiset> {
    if m < 1 {
        return Err(Error::RecurrenceOrder { order: m, min: 1 });
    }
    require_order_two(d, "the primitive multiset")?;
    Ok(PrimitiveMultiset::from_primitives(parse_primitives(
        &d.segment_l(m),
    )?))
}

/// `Φ(n)`: the parts of the order-1 primitives of `ℓ_1`.
pub fn phi_multiset(d: &FordDecomposition) -> Result<PrimitiveMultiset> {
    psi_multiset(d, 1)
}

/// `c(m, n, k)`: multiplicity of the color-0 part `k` in `Ψ(m, n)`.
pub fn primitive_count(d: &FordDecomposition, m: u32, k: u32) -> Result<u64> {
    Ok(psi_multiset(d, m)?.multiplicity(k, 0))
}

/// `c(n, k)`: multiplicity of `k` in `Φ(n)`.
pub fn order_one_count(d: &FordDecomposition, k: u32) -> Result<u64> {
    primitive_count(d, 1, k)
}

/// `0 1^(k-1)` followed by one primitive per part: `x^(y)` becomes
/// `0^(y+1) 1^(x-y-1)`. With all colors 0 this is `0 1^(k-1) 0 1^(x_1-1) …`.
pub fn omega(k: u32, composition: &ColoredComposition) -> BinaryWord {
    let mut w = BinaryWord::block(1, k as usize - 1);
    for part in &composition.parts {
        let zeros = part.color as usize + 1;
        w.extend_from(&BinaryWord::block(zeros, part.value as usize - zeros));
    }
    w
}

/// The Lyndon word `r` whose power `r^(|w|/|r|)` is the least rotation of
/// `w`.
pub fn lyndon_root(w: &BinaryWord) -> Result<BinaryWord> {
    let least = words::least_rotation(w)?;
    let len = least.len();
    for p in (1..=len).filter(|p| len % p == 0) {
        let root = least.slice(0, p);
        if (p..len).step_by(p).all(|s| least.slice(s, s + p) == root) {
            return Ok(root);
        }
    }
    unreachable!("the word is its own root at p = len")
}
