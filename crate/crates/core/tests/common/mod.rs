//! Randomized properties shared by the `properties` and `acceptance`
//! targets. Each runs a deterministic proptest runner for [`CASES`] cases
//! and reports the minimal failing input.

#![allow(dead_code)]

use std::sync::OnceLock;

use lexford::compositions::{self, Primitive};
use lexford::ford::{self, FordDecomposition};
use lexford::{oracle, recurrences, series, words, BinaryWord, Limits, TruncatedSeries};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const CASES: u32 = 1000;

/// Orders with cached decompositions.
pub const CACHED_MAX_ORDER: u32 = 16;

pub type Property = (&'static str, fn() -> Result<(), String>);

pub fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

pub fn decompositions() -> &'static [FordDecomposition] {
    static CACHE: OnceLock<Vec<FordDecomposition>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (1..=CACHED_MAX_ORDER)
            .map(|n| ford::decompose(&ford::ford_by_concatenation(n).unwrap()))
            .collect()
    })
}

fn decomposition(n: u32) -> &'static FordDecomposition {
    &decompositions()[n as usize - 1]
}

fn bits(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 0..=max_len)
}

fn nonempty_bits(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 1..=max_len)
}

fn word(symbols: &[u8]) -> BinaryWord {
    BinaryWord::from_bits(symbols.iter().map(|&b| b == 1))
}

fn text(symbols: &[u8]) -> String {
    symbols.iter().map(|b| char::from(b'0' + b)).collect()
}

pub const PROPERTIES: &[Property] = &[
    ("words_skew_identities", words_skew_identities),
    (
        "words_text_roundtrip_and_order",
        words_text_roundtrip_and_order,
    ),
    ("words_slice_and_rotation", words_slice_and_rotation),
    (
        "words_lyndon_matches_bruteforce",
        words_lyndon_matches_bruteforce,
    ),
    (
        "words_lyndon_is_least_rotation",
        words_lyndon_is_least_rotation,
    ),
    ("words_profile_is_unit_walk", words_profile_is_unit_walk),
    ("ford_constructions_agree", ford_constructions_agree),
    (
        "ford_random_windows_occur_once",
        ford_random_windows_occur_once,
    ),
    (
        "ford_reconstruction_and_factors",
        ford_reconstruction_and_factors,
    ),
    ("ford_full_suffix", ford_full_suffix),
    ("recurrences_match_naive", recurrences_match_naive),
    ("recurrences_fibonacci_sums", recurrences_fibonacci_sums),
    ("theorem_suffix_counts", theorem_suffix_counts),
    ("series_division_roundtrip", series_division_roundtrip),
    ("series_ring_laws", series_ring_laws),
    ("series_gf_matches_recurrence", series_gf_matches_recurrence),
    ("series_gf_matches_measured", series_gf_matches_measured),
    (
        "compositions_count_matches_enumeration",
        compositions_count_matches_enumeration,
    ),
    (
        "compositions_one_color_is_plain",
        compositions_one_color_is_plain,
    ),
    (
        "compositions_primitive_roundtrip",
        compositions_primitive_roundtrip,
    ),
    (
        "compositions_psi_symmetry_and_totals",
        compositions_psi_symmetry_and_totals,
    ),
    (
        "compositions_primitive_count_series",
        compositions_primitive_count_series,
    ),
    ("compositions_lyndon_root", compositions_lyndon_root),
];

pub fn words_skew_identities() -> Result<(), String> {
    check(bits(300), |w| {
        let b = word(&w);
        let ones = w.iter().filter(|&&x| x == 1).count() as i64;
        prop_assert_eq!(b.skew() + 2 * b.count_ones() as i64, w.len() as i64);
        prop_assert_eq!(b.skew(), b.count_zeros() as i64 - b.count_ones() as i64);
        prop_assert_eq!(b.count_ones() as i64, ones);
        Ok(())
    })
}

pub fn words_text_roundtrip_and_order() -> Result<(), String> {
    check((bits(150), bits(150)), |(a, b)| {
        let (wa, wb) = (word(&a), word(&b));
        prop_assert_eq!(wa.to_string(), text(&a));
        prop_assert_eq!(text(&a).parse::<BinaryWord>().unwrap(), wa.clone());
        prop_assert_eq!(wa.cmp(&wb), a.cmp(&b));
        prop_assert_eq!(wa == wb, a == b);
        Ok(())
    })
}

pub fn words_slice_and_rotation() -> Result<(), String> {
    check(
        (
            nonempty_bits(200),
            any::<prop::sample::Index>(),
            any::<prop::sample::Index>(),
        ),
        |(w, i, j)| {
            let b = word(&w);
            let (mut s, mut e) = (i.index(w.len() + 1), j.index(w.len() + 1));
            if s > e {
                std::mem::swap(&mut s, &mut e);
            }
            prop_assert_eq!(b.slice(s, e).to_symbols(), w[s..e].to_vec());
            let k = i.index(w.len());
            let rotated: Vec<u8> = w[k..].iter().chain(&w[..k]).copied().collect();
            prop_assert_eq!(b.rotated(k).to_symbols(), rotated);
            let joined = BinaryWord::concat([&b.slice(0, s), &b.slice(s, w.len())]);
            prop_assert_eq!(joined, b);
            Ok(())
        },
    )
}

pub fn words_lyndon_matches_bruteforce() -> Result<(), String> {
    check(nonempty_bits(24), |w| {
        prop_assert_eq!(
            words::is_lyndon(&word(&w)).unwrap(),
            oracle::is_lyndon(&w),
            "{}",
            text(&w)
        );
        let least = words::least_rotation(&word(&w)).unwrap();
        prop_assert_eq!(least.to_symbols(), oracle::least_rotation(&w));
        Ok(())
    })
}

/// Builds Lyndon words directly by taking least rotations of aperiodic
/// words, so the implication is exercised on many positive cases.
pub fn words_lyndon_is_least_rotation() -> Result<(), String> {
    check(nonempty_bits(64), |w| {
        let least = words::least_rotation(&word(&w)).unwrap();
        let lyndon = words::is_lyndon(&least).unwrap();
        prop_assert_eq!(lyndon, !oracle::is_periodic(&w));
        if lyndon {
            prop_assert_eq!(words::least_rotation(&least).unwrap(), least);
        }
        Ok(())
    })
}

pub fn words_profile_is_unit_walk() -> Result<(), String> {
    check(bits(300), |w| {
        let b = word(&w);
        let profile = words::prefix_skew_profile(&b);
        prop_assert_eq!(profile.len(), w.len());
        let mut previous = 0;
        for (&p, &s) in profile.iter().zip(&w) {
            prop_assert_eq!(p - previous, if s == 0 { 1 } else { -1 });
            previous = p;
        }
        prop_assert_eq!(profile.last().copied().unwrap_or(0), b.skew());
        let extremes = words::skew_extremes(&b);
        prop_assert_eq!(
            extremes.max,
            profile.iter().copied().chain([0]).max().unwrap()
        );
        prop_assert_eq!(
            extremes.min,
            profile.iter().copied().chain([0]).min().unwrap()
        );
        Ok(())
    })
}

pub fn ford_constructions_agree() -> Result<(), String> {
    let limits = Limits::default();
    check(1..=limits.greedy_max_order, |n| {
        let greedy = ford::ford_by_greedy(n).unwrap();
        let d = decomposition(n);
        prop_assert_eq!(&greedy, d.sequence());
        prop_assert!(ford::is_de_bruijn(greedy.word(), n).unwrap());
        prop_assert_eq!((greedy.word().skew(), greedy.len()), (0, 1usize << n));
        Ok(())
    })
}

/// A random window of a random order appears at exactly one cyclic offset.
pub fn ford_random_windows_occur_once() -> Result<(), String> {
    check((1..=12u32, any::<u64>()), |(n, v)| {
        let s = decomposition(n).sequence().word();
        let target = v & ((1u64 << n) - 1);
        let doubled = BinaryWord::concat([s, &s.slice(0, n as usize - 1)]);
        let hits = (0..s.len())
            .filter(|&i| doubled.value_at(i, n as usize) == target)
            .count();
        prop_assert_eq!(hits, 1);
        Ok(())
    })
}

pub fn ford_reconstruction_and_factors() -> Result<(), String> {
    check(2..=CACHED_MAX_ORDER, |n| {
        let d = decomposition(n);
        let mut rebuilt: BinaryWord = "0".parse().unwrap();
        for (_, seg) in d.segments() {
            rebuilt.extend_from(seg);
        }
        prop_assert_eq!(&rebuilt, d.sequence().word());
        for i in 1..n {
            for f in d.factors(i) {
                prop_assert!(f.contains(&BinaryWord::block(i as usize, 0)));
                prop_assert!(!f.contains(&BinaryWord::block(i as usize + 1, 0)));
            }
        }
        Ok(())
    })
}

pub fn ford_full_suffix() -> Result<(), String> {
    check((1..=CACHED_MAX_ORDER, 0..40u32), |(n, extra)| {
        let d = decomposition(n);
        let s = d.sequence().word();
        prop_assert_eq!(d.suffix_k(n - 1 + extra), s.slice(1, s.len()));
        Ok(())
    })
}

pub fn recurrences_match_naive() -> Result<(), String> {
    check((1..=10u32, 0..=3u32, 0..70usize), |(m, family, count)| {
        let seq = match family {
            0 => recurrences::RecurrenceSequence::generalized_fibonacci(m),
            1 => recurrences::RecurrenceSequence::generalized_lucas(m),
            2 if m >= 2 => recurrences::RecurrenceSequence::colored_composition(m),
            _ => recurrences::RecurrenceSequence::new("x", (1..=i64::from(m)).collect()),
        }
        .unwrap();
        let initial: Vec<i128> = seq.initial_values().iter().map(|&v| v.into()).collect();
        let want = oracle::recurrence_naive(&initial, count);
        match seq.terms(count) {
            Ok(got) => {
                let got: Vec<i128> = got.into_iter().map(i128::from).collect();
                prop_assert_eq!(got, want);
            }
            // Overflow is reported only when some term really leaves i64.
            Err(_) => prop_assert!(want.iter().any(|&v| i64::try_from(v).is_err())),
        }
        Ok(())
    })
}

pub fn recurrences_fibonacci_sums() -> Result<(), String> {
    let fib = |n: u64| recurrences::fibonacci(n).unwrap();
    check(1..=40u64, |n| {
        prop_assert_eq!((1..=n).map(fib).sum::<i64>(), fib(n + 2) - 1);
        let weighted: i64 = (1..=n).map(|i| i as i64 * fib(n - i)).sum();
        prop_assert_eq!(weighted, fib(n + 3) - (n as i64 + 2));
        prop_assert_eq!(i128::from(fib(n)), oracle::fibonacci_naive(n as u32));
        Ok(())
    })
}

pub fn theorem_suffix_counts() -> Result<(), String> {
    check((1..=CACHED_MAX_ORDER, 0..=24u32), |(n, m)| {
        let k = decomposition(n).suffix_k(m);
        prop_assert_eq!(
            k.skew(),
            -recurrences::generalized_fibonacci(m + 1, u64::from(n - 1)).unwrap()
        );
        prop_assert_eq!(
            k.len() as i64,
            recurrences::generalized_lucas(m + 1, u64::from(n)).unwrap()
        );
        Ok(())
    })
}

fn small_series(degree: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-50i64..=50, 0..=degree + 1)
        .prop_map(move |c| TruncatedSeries::from_coefficients(c, degree))
}

fn unit_series(degree: usize) -> impl Strategy<Value = TruncatedSeries> {
    (prop::bool::ANY, prop::collection::vec(-3i64..=3, 0..=6)).prop_map(move |(neg, mut tail)| {
        tail.insert(0, if neg { -1 } else { 1 });
        TruncatedSeries::from_coefficients(tail, degree)
    })
}

pub fn series_division_roundtrip() -> Result<(), String> {
    check((small_series(20), unit_series(20)), |(a, b)| {
        if let Ok(q) = a.div(&b) {
            prop_assert_eq!(q.mul(&b).unwrap(), a);
        }
        Ok(())
    })
}

pub fn series_ring_laws() -> Result<(), String> {
    check(
        (small_series(24), small_series(24), small_series(24)),
        |(a, b, c)| {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a.clone());
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let shifted = a.shift(3);
            let x3 = TruncatedSeries::monomial(1, 3, 24);
            prop_assert_eq!(shifted, a.mul(&x3).unwrap());
            Ok(())
        },
    )
}

pub fn series_gf_matches_recurrence() -> Result<(), String> {
    check((1..=6u32, 0..=2u8, 0..=60usize), |(m, family, degree)| {
        let (gf, seq) = match family {
            0 => (
                series::generalized_fibonacci_gf(m, degree),
                recurrences::RecurrenceSequence::generalized_fibonacci(m),
            ),
            1 => (
                series::generalized_lucas_gf(m, degree),
                recurrences::RecurrenceSequence::generalized_lucas(m),
            ),
            _ => {
                let m = m.max(2);
                (
                    series::colored_composition_gf(m, degree),
                    recurrences::RecurrenceSequence::colored_composition(m),
                )
            }
        };
        let terms = seq.unwrap().terms(degree + 1).unwrap();
        let gf = gf.unwrap();
        prop_assert_eq!(gf.coefficients(), terms.as_slice());
        Ok(())
    })
}

pub fn series_gf_matches_measured() -> Result<(), String> {
    let degree = CACHED_MAX_ORDER as usize;
    check((1..=CACHED_MAX_ORDER, 0..=12u32), |(n, m)| {
        let d = decomposition(n);
        let k = d.suffix_k(m);
        let at = |s: TruncatedSeries| s.coefficient(n as usize).unwrap();
        prop_assert_eq!(at(series::suffix_skew_gf(m, degree).unwrap()), k.skew());
        prop_assert_eq!(
            at(series::suffix_length_gf(m, degree).unwrap()),
            k.len() as i64
        );
        if m >= 1 {
            let l = d.segment_l(m);
            prop_assert_eq!(
                at(series::segment_zeros_gf(m, degree).unwrap()),
                l.count_zeros() as i64
            );
            prop_assert_eq!(
                at(series::segment_ones_gf(m, degree).unwrap()),
                l.count_ones() as i64
            );
        }
        Ok(())
    })
}

pub fn compositions_count_matches_enumeration() -> Result<(), String> {
    check((1..=5u32, 0..=14u32), |(m, n)| {
        let all = compositions::colored_compositions(m, n).unwrap();
        prop_assert_eq!(
            all.len() as i64,
            compositions::colored_composition_count(m, n).unwrap()
        );
        for c in &all {
            prop_assert!(c.is_admissible(m));
            prop_assert_eq!(c.total(), n);
        }
        Ok(())
    })
}

pub fn compositions_one_color_is_plain() -> Result<(), String> {
    check(0..=20u32, |n| {
        let colored = compositions::colored_compositions(1, n).unwrap();
        let plain = compositions::compositions_ge2(n).unwrap();
        let stripped: Vec<Vec<u32>> = colored
            .iter()
            .map(|c| c.parts.iter().map(|p| p.value).collect())
            .collect();
        prop_assert_eq!(stripped, plain);
        Ok(())
    })
}

pub fn compositions_primitive_roundtrip() -> Result<(), String> {
    check(prop::collection::vec((1u32..6, 1u32..6), 0..20), |blocks| {
        let mut w = BinaryWord::new();
        for &(z, o) in &blocks {
            w.extend_from(&BinaryWord::block(z as usize, o as usize));
        }
        let parsed = compositions::parse_primitives(&w).unwrap();
        let want: Vec<Primitive> = blocks
            .iter()
            .map(|&(z, o)| Primitive {
                order: z,
                length: z + o,
            })
            .collect();
        prop_assert_eq!(parsed, want);
        Ok(())
    })
}

pub fn compositions_psi_symmetry_and_totals() -> Result<(), String> {
    check((2..=CACHED_MAX_ORDER, 1..=10u32), |(n, m)| {
        let d = decomposition(n);
        let psi = compositions::psi_multiset(d, m).unwrap();
        for (part, count) in psi.iter() {
            prop_assert!(part.is_admissible(m));
            prop_assert_eq!(count, psi.multiplicity(part.value, 0));
        }
        let l = d.segment_l(m);
        prop_assert_eq!((psi.zeros(), psi.ones()), (l.count_zeros(), l.count_ones()));
        Ok(())
    })
}

pub fn compositions_primitive_count_series() -> Result<(), String> {
    check((2..=CACHED_MAX_ORDER, 1..=6u32, 2..=18u32), |(n, m, k)| {
        let d = decomposition(n);
        let got = compositions::primitive_count(d, m, k).unwrap() as i64;
        let gf = series::primitive_count_gf(m, k as usize, n as usize).unwrap();
        prop_assert_eq!(Some(got), gf.coefficient(n as usize));
        Ok(())
    })
}

pub fn compositions_lyndon_root() -> Result<(), String> {
    // Words built as powers of random words, so periodic inputs are common.
    check(
        (nonempty_bits(8), 1..=4usize, any::<prop::sample::Index>()),
        |(base, power, shift)| {
            let w: Vec<u8> = base
                .iter()
                .copied()
                .cycle()
                .take(base.len() * power)
                .collect();
            let k = shift.index(w.len());
            let w: Vec<u8> = w[k..].iter().chain(&w[..k]).copied().collect();
            let root = compositions::lyndon_root(&word(&w)).unwrap();
            prop_assert!(words::is_lyndon(&root).unwrap());
            prop_assert_eq!(w.len() % root.len(), 0);
            let r = root.to_symbols();
            let power_of_root: Vec<u8> = r.iter().copied().cycle().take(w.len()).collect();
            prop_assert!(oracle::rotations(&w).any(|rot| rot == power_of_root));
            Ok(())
        },
    )
}
