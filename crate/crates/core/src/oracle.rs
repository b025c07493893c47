//! Brute-force references used by the verifier and the tests.
//!
//! Nothing here calls into the production paths of [`crate::words`] or
//! [`crate::ford`]; words are plain `Vec<u8>` of 0/1 symbols.

use crate::parallel::{self, Execution};

/// Every word of length `len`, in lexicographic order.
pub fn all_words(len: usize) -> impl Iterator<Item = Vec<u8>> {
    assert!(len < 32);
    (0u64..1 << len).map(move |v| (0..len).rev().map(|i| ((v >> i) & 1) as u8).collect())
}

pub fn rotations(w: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    (0..w.len()).map(move |k| w[k..].iter().chain(&w[..k]).copied().collect())
}

/// Strictly below every nontrivial rotation.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && rotations(w).skip(1).all(|r| w < r.as_slice())
}

/// Equal to a nontrivial rotation of itself.
pub fn is_periodic(w: &[u8]) -> bool {
    rotations(w).skip(1).any(|r| r.as_slice() == w)
}

pub fn least_rotation(w: &[u8]) -> Vec<u8> {
    rotations(w).min().unwrap_or_default()
}

/// Lyndon words of every length dividing `n`, sorted.
pub fn lyndon_words_dividing(n: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .flat_map(|d| all_words(d).filter(|w| is_lyndon(w)))
        .collect();
    out.sort();
    out
}

/// Every binary de Bruijn string of order `n` (all rotations of every
/// cycle), found by exhaustive backtracking from each starting window.
pub fn all_de_bruijn_strings(n: usize, execution: Execution) -> Vec<Vec<u8>> {
    assert!((1..=6).contains(&n));
    let starts: Vec<u64> = (0..1u64 << n).collect();
    parallel::map_collect(execution, starts, |start| {
        let mut out = Vec::new();
        let mut seen = vec![false; 1 << n];
        seen[start as usize] = true;
        let mut prefix: Vec<u8> = (0..n).rev().map(|i| ((start >> i) & 1) as u8).collect();
        extend(n, &mut prefix, start, &mut seen, &mut out);
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

fn extend(n: usize, prefix: &mut Vec<u8>, window: u64, seen: &mut [bool], out: &mut Vec<Vec<u8>>) {
    let total = 1usize << n;
    let mask = (total as u64) - 1;
    if prefix.len() == total {
        // Close the cycle: the n - 1 wrapping windows must be new too.
        let mut w = window;
        let mut marked = Vec::new();
        let mut ok = true;
        for &bit in &prefix[..n - 1] {
            w = ((w << 1) | u64::from(bit)) & mask;
            if seen[w as usize] {
                ok = false;
                break;
            }
            seen[w as usize] = true;
            marked.push(w);
        }
        for w in marked {
            seen[w as usize] = false;
        }
        if ok {
            out.push(prefix.clone());
        }
        return;
    }
    for bit in 0..2u8 {
        let w = ((window << 1) | u64::from(bit)) & mask;
        if !seen[w as usize] {
            seen[w as usize] = true;
            prefix.push(bit);
            extend(n, prefix, w, seen, out);
            prefix.pop();
            seen[w as usize] = false;
        }
    }
}

pub fn fibonacci_naive(n: u32) -> i128 {
    let (mut a, mut b) = (0i128, 1i128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// Terms `0..count` of the recurrence summing the previous `initial.len()`
/// terms, recomputing each sum from scratch.
pub fn recurrence_naive(initial: &[i128], count: usize) -> Vec<i128> {
    let m = initial.len();
    let mut out: Vec<i128> = initial.iter().copied().take(count).collect();
    while out.len() < count {
        let k = out.len();
        out.push(out[k - m..k].iter().sum());
    }
    out
}
