//! Exact evaluation of the Fibonacci-like sequences the breakpoint counts
//! follow. Every sequence here is an order-`m` recurrence whose terms are
//! the sum of the previous `m`, differing only in initial values:
//!
//! | family | initial values                       | counts                      |
//! |--------|--------------------------------------|-----------------------------|
//! | G      | `1, 1, …, 1`                         | negated skew of `K_m`       |
//! | H      | `m, 1, 3, 7, …, 2^(m-1) - 1`         | length of `K_m`             |
//! | P      | `0, …, 0, 1, 0`                      | colored compositions        |
//!
//! Arithmetic is checked `i64`; overflow is reported, never wrapped.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSequence {
    name: &'static str,
    initial: Vec<i64>,
}

impl RecurrenceSequence {
    /// Order is `initial.len()`, which must be at least 1.
    pub fn new(name: &'static str, initial: Vec<i64>) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::RecurrenceOrder { order: 0, min: 1 });
        }
        Ok(Self { name, initial })
    }

    pub fn with_order(name: &'static str, order: u32, initial: Vec<i64>) -> Result<Self> {
        if initial.len() != order as usize {
            return Err(Error::InitialValues {
                expected: order as usize,
                actual: initial.len(),
            });
        }
        Self::new(name, initial)
    }

    /// `G^(m)`: all initial values 1.
    pub fn generalized_fibonacci(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::RecurrenceOrder { order: m, min: 1 });
        }
        Self::with_order("G", m, vec![1; m as usize])
    }

    /// `H^(m)`: `H_0 = m`, `H_i = 2^i - 1` for `1 <= i < m`.
    pub fn generalized_lucas(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::RecurrenceOrder { order: m, min: 1 });
        }
        if m > 63 {
            return Err(Error::Overflow {
                what: "H initial values",
                index: u64::from(m) - 1,
            });
        }
        let mut initial = vec![i64::from(m)];
        initial.extend((1..m).map(|i| (1i64 << i) - 1));
        Self::with_order("H", m, initial)
    }

    /// `P^(m)`, `m >= 2`: zeros except `P_{m-2} = 1`.
    pub fn colored_composition(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::RecurrenceOrder { order: m, min: 2 });
        }
        let mut initial = vec![0; m as usize];
        initial[m as usize - 2] = 1;
        Self::with_order("P", m, initial)
    }

    pub fn order(&self) -> u32 {
        self.initial.len() as u32
    }

    pub fn initial_values(&self) -> &[i64] {
        &self.initial
    }

    /// Terms `0..count`.
    pub fn terms(&self, count: usize) -> Result<Vec<i64>> {
        let m = self.initial.len();
        let mut out: Vec<i64> = self.initial.iter().copied().take(count).collect();
        if count <= m {
            return Ok(out);
        }
        let overflow = |index: usize| Error::Overflow {
            what: self.name,
            index: index as u64,
        };
        // Sum of the previous m terms.
        let mut window = self
            .initial
            .iter()
            .try_fold(0i64, |acc, v| acc.checked_add(*v))
            .ok_or_else(|| overflow(m))?;
        out.reserve(count - m);
        for k in m..count {
            out.push(window);
            if k + 1 < count {
                window = window
                    .checked_sub(out[k - m])
                    .and_then(|s| s.checked_add(window))
                    .ok_or_else(|| overflow(k + 1))?;
            }
        }
        Ok(out)
    }

    pub fn term(&self, n: u64) -> Result<i64> {
        let count = usize::try_from(n)
            .ok()
            .and_then(|n| n.checked_add(1))
            .ok_or(Error::Overflow {
                what: self.name,
                index: n,
            })?;
        Ok(*self.terms(count)?.last().expect("count >= 1"))
    }
}

pub fn fibonacci(n: u64) -> Result<i64> {
    RecurrenceSequence::new("F", vec![0, 1])?.term(n)
}

pub fn lucas(n: u64) -> Result<i64> {
    RecurrenceSequence::new("L", vec![2, 1])?.term(n)
}

/// `G^(m)_n`
pub fn generalized_fibonacci(m: u32, n: u64) -> Result<i64> {
    RecurrenceSequence::generalized_fibonacci(m)?.term(n)
}

/// `H^(m)_n`
pub fn generalized_lucas(m: u32, n: u64) -> Result<i64> {
    RecurrenceSequence::generalized_lucas(m)?.term(n)
}

/// `P^(m)_n`
pub fn colored_composition_term(m: u32, n: u64) -> Result<i64> {
    RecurrenceSequence::colored_composition(m)?.term(n)
}
