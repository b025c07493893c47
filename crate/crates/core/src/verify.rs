//! The full identity suite: every structural property of the Ford sequence
//! and every counting identity, checked numerically at a chosen scale.
//!
//! Checks are independent of one another and run through
//! [`crate::parallel`]; the report is sorted by check name so output does
//! not depend on scheduling.

use std::fmt::Write as _;

use serde::Serialize;

use crate::compositions::{self, ColoredComposition};
use crate::error::Result;
use crate::ford::{self, FordDecomposition, FordSequence, Limits};
use crate::oracle;
use crate::parallel::{self, Execution};
use crate::recurrences::{self, RecurrenceSequence};
use crate::series::{self, TruncatedSeries};
use crate::tables;
use crate::words::{self, BinaryWord};

pub const DEFAULT_MAX_ORDER: u32 = 16;
pub const DEFAULT_MAX_M: u32 = 9;

const EXHAUSTIVE_WORD_LEN: usize = 12;
const LEX_LEAST_ORACLE_ORDER: u32 = 5;
const SUCCESSOR_ORACLE_ORDER: u32 = 12;
const SERIES_DEGREE: usize = 60;
const COLORED_MAX_M: u32 = 5;
const COLORED_MAX_N: u32 = 18;
const PRIMITIVE_SERIES_MAX_M: u32 = 4;
const PRIMITIVE_SERIES_MAX_N: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_order: u32,
    pub max_m: u32,
    pub execution: Execution,
    pub limits: Limits,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
            max_m: DEFAULT_MAX_M,
            execution: Execution::Parallel,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub parameters: String,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    fn new(mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| (&a.name, &a.parameters).cmp(&(&b.name, &b.parameters)));
        Self {
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(
                out,
                "{status}  {}  [{}]  ({} cases)",
                c.name, c.parameters, c.cases
            );
            if let Some(ce) = &c.counterexample {
                let _ = write!(out, "  counterexample: {ce}");
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "overall: {} ({passed}/{} checks)",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len()
        );
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Counts cases and keeps the first failure.
struct Tally {
    name: &'static str,
    parameters: String,
    cases: u64,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str, parameters: impl Into<String>) -> Self {
        Self {
            name,
            parameters: parameters.into(),
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn equal<T: PartialEq + std::fmt::Debug>(
        &mut self,
        got: T,
        want: T,
        at: impl FnOnce() -> String,
    ) {
        let ok = got == want;
        self.check(ok, || format!("{}: got {got:?}, expected {want:?}", at()));
    }

    /// Records an error from a fallible step as a failure.
    fn ok<T>(&mut self, r: Result<T>, at: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", at()));
                None
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            parameters: self.parameters,
            passed: self.failure.is_none(),
            cases: self.cases,
            counterexample: self.failure,
        }
    }
}

/// Everything the checks need about one order.
struct OrderData {
    order: u32,
    sequence: Result<FordSequence>,
    decomposition: Result<FordDecomposition>,
}

struct Context {
    config: VerifyConfig,
    orders: Vec<OrderData>,
}

impl Context {
    fn decompositions(
        &self,
        min_order: u32,
    ) -> impl Iterator<Item = (u32, &Result<FordDecomposition>)> {
        self.orders
            .iter()
            .filter(move |o| o.order >= min_order)
            .map(|o| (o.order, &o.decomposition))
    }
}

type CheckFn = fn(&Context) -> CheckResult;

const CHECKS: &[CheckFn] = &[
    words_lyndon_bruteforce,
    words_lyndon_list,
    words_skew_identities,
    words_least_rotation,
    words_profile_walk,
    ford_successor_bruteforce,
    ford_greedy_equals_concatenation,
    ford_de_bruijn,
    ford_lex_least_bruteforce,
    ford_skew_and_length,
    ford_reconstruction,
    ford_segment_factors,
    ford_full_suffix,
    recurrences_fibonacci_identities,
    recurrences_family_reductions,
    recurrences_p_lemma,
    theorem_suffix_skew,
    theorem_suffix_length,
    theorem_segment_one,
    series_division_roundtrip,
    series_recurrence_gfs,
    series_measured_gfs,
    series_offset_relations,
    compositions_order_one_counts,
    compositions_plain_count,
    compositions_colored_count,
    compositions_primitive_series,
    compositions_color_symmetry,
    compositions_primitive_totals,
    compositions_psi_phi,
    compositions_lyndon_root,
    tables_published,
];

/// Runs the suite on sequences built by concatenation.
pub fn run(config: &VerifyConfig) -> Result<VerificationReport> {
    let limits = config.limits;
    run_with(config, move |n| {
        ford::ford_by_concatenation_with(n, &limits)
    })
}

/// Runs the suite on the sequences `construct` returns, so a corrupted
/// constructor can be injected as a negative control.
pub fn run_with<F>(config: &VerifyConfig, construct: F) -> Result<VerificationReport>
where
    F: Fn(u32) -> Result<FordSequence> + Sync + Send,
{
    config.limits.check_order(config.max_order)?;
    let orders = parallel::map_collect(config.execution, (1..=config.max_order).collect(), |n| {
        let sequence = construct(n);
        let decomposition = match &sequence {
            Ok(s) => ford::try_decompose(s),
            Err(e) => Err(e.clone()),
        };
        OrderData {
            order: n,
            sequence,
            decomposition,
        }
    });
    let ctx = Context {
        config: *config,
        orders,
    };
    let results = parallel::map_collect(config.execution, CHECKS.to_vec(), |check| check(&ctx));
    Ok(VerificationReport::new(results))
}

fn word_of(symbols: &[u8]) -> BinaryWord {
    BinaryWord::from_bits(symbols.iter().map(|&b| b == 1))
}

fn show(symbols: &[u8]) -> String {
    symbols.iter().map(|b| char::from(b'0' + b)).collect()
}

fn words_lyndon_bruteforce(_: &Context) -> CheckResult {
    let mut t = Tally::new(
        "words.lyndon_bruteforce",
        format!("|w| <= {EXHAUSTIVE_WORD_LEN}"),
    );
    for len in 1..=EXHAUSTIVE_WORD_LEN {
        for w in oracle::all_words(len) {
            let want = oracle::is_lyndon(&w);
            // the brute-force definition: aperiodic and least in its class
            let by_definition = !oracle::is_periodic(&w) && oracle::least_rotation(&w) == w;
            t.equal(want, by_definition, || {
                format!("definition of {}", show(&w))
            });
            if let Some(got) = t.ok(words::is_lyndon(&word_of(&w)), || show(&w)) {
                t.equal(got, want, || show(&w));
            }
        }
    }
    t.finish()
}

fn words_lyndon_list(_: &Context) -> CheckResult {
    let mut t = Tally::new("words.lyndon_up_to_4", "|w| <= 4");
    let mut found = Vec::new();
    for len in 1..=4 {
        for w in oracle::all_words(len) {
            if t.ok(words::is_lyndon(&word_of(&w)), || show(&w)) == Some(true) {
                found.push(show(&w));
            }
        }
    }
    found.sort();
    t.equal(
        found,
        ["0", "0001", "0011", "01", "0111", "1"]
            .iter()
            .chain(&["001", "011"])
            .map(|s| s.to_string())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect(),
        || "Lyndon words of length <= 4".into(),
    );
    t.finish()
}

fn skew_identities(t: &mut Tally, w: &BinaryWord, label: &dyn Fn() -> String) {
    let (z, o, s, l) = (
        w.count_zeros() as i64,
        w.count_ones() as i64,
        w.skew(),
        w.len() as i64,
    );
    t.check(s + 2 * o == l && s == z - o && z + o == l, || {
        format!("{}: zeros {z}, ones {o}, skew {s}, length {l}", label())
    });
}

fn words_skew_identities(ctx: &Context) -> CheckResult {
    let mut t = Tally::new(
        "words.skew_identities",
        format!(
            "|w| <= {EXHAUSTIVE_WORD_LEN}, F_n for n <= {}",
            ctx.config.max_order
        ),
    );
    for len in 0..=EXHAUSTIVE_WORD_LEN {
        for w in oracle::all_words(len) {
            let word = word_of(&w);
            let oracle_skew = w
                .iter()
                .map(|&b| if b == 0 { 1i64 } else { -1 })
                .sum::<i64>();
            t.equal(word.skew(), oracle_skew, || show(&w));
            skew_identities(&mut t, &word, &|| show(&w));
        }
    }
    for o in &ctx.orders {
        if let Ok(s) = &o.sequence {
            skew_identities(&mut t, s.word(), &|| format!("F_{}", o.order));
        }
    }
    t.finish()
}

fn words_least_rotation(_: &Context) -> CheckResult {
    let mut t = Tally::new(
        "words.least_rotation",
        format!("|w| <= {EXHAUSTIVE_WORD_LEN}"),
    );
    for len in 1..=EXHAUSTIVE_WORD_LEN {
        for w in oracle::all_words(len) {
            let word = word_of(&w);
            if let Some(got) = t.ok(words::least_rotation(&word), || show(&w)) {
                t.equal(got.to_string(), show(&oracle::least_rotation(&w)), || {
                    show(&w)
                });
                if oracle::is_lyndon(&w) {
                    t.equal(got, word, || {
                        format!("Lyndon {} is its own least rotation", show(&w))
                    });
                }
            }
        }
    }
    t.finish()
}

fn words_profile_walk(ctx: &Context) -> CheckResult {
    let mut t = Tally::new(
        "words.profile_walk",
        format!("F_n, n <= {}", ctx.config.max_order),
    );
    for o in &ctx.orders {
        let Ok(s) = &o.sequence else { continue };
        let profile = words::prefix_skew_profile(s.word());
        let n = o.order;
        t.equal(profile.len(), s.len(), || format!("profile length, n={n}"));
        let unit = std::iter::once(&0)
            .chain(&profile)
            .zip(&profile)
            .all(|(a, b)| (a - b).abs() == 1);
        t.check(unit, || format!("n={n}: profile is not a +-1 walk"));
        t.equal(profile.last().copied(), Some(s.word().skew()), || {
            format!("final entry, n={n}")
        });
        let max = profile.iter().copied().max().unwrap_or(0).max(0);
        t.equal(words::discrepancy(s.word()), max as u64, || {
            format!("discrepancy, n={n}")
        });
    }
    t.finish()
}

fn ford_successor_bruteforce(ctx: &Context) -> CheckResult {
    let top = ctx.config.max_order.min(SUCCESSOR_ORACLE_ORDER);
    let mut t = Tally::new("ford.lyndon_successor_bruteforce", format!("n <= {top}"));
    for n in 1..=top {
        let got: Option<Vec<String>> = t
            .ok(
                ford::lyndon_words_dividing_with(n, &ctx.config.limits),
                || format!("n={n}"),
            )
            .map(|ws| ws.iter().map(|w| w.to_string()).collect());
        if let Some(got) = got {
            let want: Vec<String> = oracle::lyndon_words_dividing(n as usize)
                .iter()
                .map(|w| show(w))
                .collect();
            t.equal(got, want, || format!("n={n}"));
        }
    }
    t.finish()
}

fn ford_greedy_equals_concatenation(ctx: &Context) -> CheckResult {
    let top = ctx.config.max_order.min(ctx.config.limits.greedy_max_order);
    let mut t = Tally::new("ford.greedy_equals_concatenation", format!("n <= {top}"));
    for o in ctx.orders.iter().filter(|o| o.order <= top) {
        let n = o.order;
        let Some(s) = t.ok(o.sequence.clone(), || format!("n={n}")) else {
            continue;
        };
        if let Some(g) = t.ok(ford::ford_by_greedy_with(n, &ctx.config.limits), || {
            format!("greedy n={n}")
        }) {
            t.check(g == s, || {
                format!("n={n}: greedy {} vs {}", g.word(), s.word())
            });
        }
    }
    t.finish()
}

fn ford_de_bruijn(ctx: &Context) -> CheckResult {
    let mut t = Tally::new("ford.de_bruijn", format!("n <= {}", ctx.config.max_order));
    for o in &ctx.orders {
        let n = o.order;
        let Some(s) = t.ok(o.sequence.clone(), || format!("n={n}")) else {
            continue;
        };
        if let Some(ok) = t.ok(ford::is_de_bruijn(s.word(), n), || format!("n={n}")) {
            t.check(ok, || format!("n={n}: repeated window in {:?}", s.word()));
        }
    }
    t.finish()
}

fn ford_lex_least_bruteforce(ctx: &Context) -> CheckResult {
    let top = ctx.config.max_order.min(LEX_LEAST_ORACLE_ORDER);
    let mut t = Tally::new("ford.lex_least_bruteforce", format!("n <= {top}"));
    for o in ctx.orders.iter().filter(|o| o.order <= top) {
        let n = o.order;
        let Some(s) = t.ok(o.sequence.clone(), || format!("n={n}")) else {
            continue;
        };
        let all = oracle::all_de_bruijn_strings(n as usize, Execution::Sequential);
        let expected_count = 1usize << ((1usize << (n - 1)) - n as usize + n as usize);
        t.equal(all.len(), expected_count, || {
            format!("n={n}: number of de Bruijn strings")
        });
        let least = all.iter().min().map(|w| show(w));
        t.equal(Some(s.word().to_string()), least, || format!("n={n}"));
    }
    t.finish()
}

fn ford_skew_and_length(ctx: &Context) -> CheckResult {
    let mut t = Tally::new(
        "ford.skew_and_length",
        format!("n <= {}", ctx.config.max_order),
    );
    for o in &ctx.orders {
        let n = o.order;
        let Some(s) = t.ok(o.sequence.clone(), || format!("n={n}")) else {
            continue;
        };
        t.equal((s.word().skew(), s.len()), (0, 1usize << n), || {
            format!("n={n}")
        });
    }
    t.finish()
}

fn ford_reconstruction(ctx: &Context) -> CheckResult {
    let mut t = Tally::new(
        "ford.reconstruction",
        format!("n <= {}", ctx.config.max_order),
    );
    for (n, d) in ctx.decompositions(1) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        let mut rebuilt: BinaryWord = "0".parse().expect("literal");
        for (_, seg) in d.segments() {
            rebuilt.extend_from(seg);
        }
        t.check(&rebuilt == d.sequence().word(), || {
            format!("n={n}: reconstruction differs")
        });
        t.equal(d.segment(0).to_string(), "1".to_string(), || {
            format!("n={n}: last segment")
        });
        t.check(
            d.segment(n).is_empty() && d.segment(n + 3).is_empty(),
            || format!("n={n}: segments past n - 1 are not empty"),
        );
        for i in 1..n {
            let marker = BinaryWord::block(i as usize, (n - i) as usize);
            let seg = d.segment(i);
            let ends = seg.len() >= marker.len()
                && seg.slice(seg.len() - marker.len(), seg.len()) == marker;
            t.check(ends, || {
                format!("n={n}: segment {i} does not end with {marker}")
            });
        }
    }
    t.finish()
}

fn ford_segment_factors(ctx: &Context) -> CheckResult {
    let mut t = Tally::new(
        "ford.segment_factors",
        format!("n <= {}", ctx.config.max_order),
    );
    for (n, d) in ctx.decompositions(2) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        for i in 1..n {
            let run = BinaryWord::block(i as usize, 0);
            let longer = BinaryWord::block(i as usize + 1, 0);
            let mut previous: Option<BinaryWord> = None;
            for f in d.factors(i) {
                let lyndon = words::is_lyndon(&f).unwrap_or(false);
                let ok = lyndon
                    && (n as usize).is_multiple_of(f.len())
                    && f.len() > 1
                    && f.contains(&run)
                    && !f.contains(&longer)
                    && previous.as_ref().is_none_or(|p| *p < f);
                t.check(ok, || format!("n={n}: factor {f} in segment {i}"));
                previous = Some(f);
            }
        }
    }
    t.finish()
}

fn ford_full_suffix(ctx: &Context) -> CheckResult {
    let top_m = ctx.config.max_m.max(ctx.config.max_order);
    let mut t = Tally::new(
        "ford.full_suffix",
        format!("n <= {}, n - 1 <= m <= {top_m}", ctx.config.max_order),
    );
    for (n, d) in ctx.decompositions(1) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        let word = d.sequence().word();
        let tail = word.slice(1, word.len());
        for m in n - 1..=top_m {
            t.check(d.suffix_k(m) == tail, || format!("n={n}, m={m}"));
        }
        t.equal(d.suffix_k(0).to_string(), "1".to_string(), || {
            format!("n={n}: K_0")
        });
    }
    t.finish()
}

fn recurrences_fibonacci_identities(_: &Context) -> CheckResult {
    let mut t = Tally::new("recurrences.fibonacci_identities", "n <= 40");
    let fib = |n: u64| recurrences::fibonacci(n).expect("in range");
    for n in 0..=40u64 {
        t.equal(
            i128::from(fib(n)),
            oracle::fibonacci_naive(n as u32),
            || format!("F_{n}"),
        );
        if n >= 1 {
            let sum: i64 = (1..=n).map(fib).sum();
            t.equal(sum, fib(n + 2) - 1, || format!("sum of F_1..F_{n}"));
            let weighted: i64 = (1..=n).map(|i| i as i64 * fib(n - i)).sum();
            t.equal(weighted, fib(n + 3) - (n as i64 + 2), || {
                format!("weighted sum, n={n}")
            });
            let lucas = recurrences::lucas(n).expect("in range");
            t.equal(lucas, fib(n - 1) + fib(n + 1), || format!("L_{n}"));
        }
    }
    t.finish()
}

fn recurrences_family_reductions(_: &Context) -> CheckResult {
    let mut t = Tally::new(
        "recurrences.family_reductions",
        "n <= 30; naive m <= 8, 60 terms",
    );
    for n in 0..=30u64 {
        let fib = |k: u64| recurrences::fibonacci(k).expect("in range");
        t.equal(
            recurrences::generalized_fibonacci(2, n),
            Ok(fib(n + 1)),
            || format!("G(2,{n})"),
        );
        t.equal(
            recurrences::generalized_lucas(2, n),
            recurrences::lucas(n),
            || format!("H(2,{n})"),
        );
        t.equal(recurrences::generalized_fibonacci(1, n), Ok(1), || {
            format!("G(1,{n})")
        });
        t.equal(recurrences::generalized_lucas(1, n), Ok(1), || {
            format!("H(1,{n})")
        });
        if n >= 1 {
            t.equal(
                recurrences::colored_composition_term(2, n),
                Ok(fib(n - 1)),
                || format!("P(2,{n})"),
            );
        }
    }
    for m in 1..=8u32 {
        let families = [
            RecurrenceSequence::generalized_fibonacci(m),
            RecurrenceSequence::generalized_lucas(m),
            RecurrenceSequence::colored_composition(m),
        ];
        for seq in families.into_iter().flatten() {
            let initial: Vec<i128> = seq.initial_values().iter().map(|&v| v.into()).collect();
            let want = oracle::recurrence_naive(&initial, 60);
            if let Some(got) = t.ok(seq.terms(60), || format!("m={m}")) {
                let got: Vec<i128> = got.into_iter().map(i128::from).collect();
                t.equal(got, want, || format!("m={m}, initial {initial:?}"));
            }
        }
    }
    t.finish()
}

fn recurrences_p_lemma(_: &Context) -> CheckResult {
    let mut t = Tally::new("recurrences.p_lemma", "2 <= m <= 8");
    for m in 2..=8u32 {
        for n in m..=2 * m - 2 {
            t.equal(
                recurrences::colored_composition_term(m, n.into()),
                Ok(1i64 << (n - m)),
                || format!("P({m},{n})"),
            );
        }
        t.equal(
            recurrences::colored_composition_term(m, (2 * m - 1).into()),
            Ok((1i64 << (m - 1)) - 1),
            || format!("P({m},{})", 2 * m - 1),
        );
    }
    t.finish()
}

fn theorem_suffix_skew(ctx: &Context) -> CheckResult {
    let c = &ctx.config;
    let mut t = Tally::new(
        "theorem.suffix_skew",
        format!("n <= {}, m <= {}", c.max_order, c.max_m),
    );
    for (n, d) in ctx.decompositions(1) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        for m in 0..=c.max_m {
            let want = recurrences::generalized_fibonacci(m + 1, u64::from(n - 1)).map(|g| -g);
            t.equal(Ok(d.suffix_k(m).skew()), want, || {
                format!("sk(K_{m}) at n={n}")
            });
        }
    }
    t.finish()
}

fn theorem_suffix_length(ctx: &Context) -> CheckResult {
    let c = &ctx.config;
    let mut t = Tally::new(
        "theorem.suffix_length",
        format!("n <= {}, m <= {}", c.max_order, c.max_m),
    );
    for (n, d) in ctx.decompositions(1) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        for m in 0..=c.max_m {
            let want = recurrences::generalized_lucas(m + 1, u64::from(n));
            t.equal(Ok(d.suffix_k(m).len() as i64), want, || {
                format!("|K_{m}| at n={n}")
            });
        }
    }
    t.finish()
}

fn theorem_segment_one(ctx: &Context) -> CheckResult {
    let mut t = Tally::new(
        "theorem.segment_one",
        format!("2 <= n <= {}", ctx.config.max_order),
    );
    let fib = |k: u32| recurrences::fibonacci(k.into()).expect("in range");
    for (n, d) in ctx.decompositions(2) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        let l1 = d.segment(1);
        t.equal(l1.count_zeros() as i64, fib(n - 1), || {
            format!("zeros of l_1, n={n}")
        });
        t.equal(l1.count_ones() as i64, fib(n + 1) - 1, || {
            format!("ones of l_1, n={n}")
        });
        t.equal(l1.skew(), -fib(n) + 1, || format!("skew of l_1, n={n}"));
        let lucas = recurrences::lucas(n.into()).expect("in range");
        t.equal(l1.len() as i64, lucas - 1, || {
            format!("length of l_1, n={n}")
        });
    }
    t.finish()
}

fn series_division_roundtrip(_: &Context) -> CheckResult {
    let degree = 30;
    let mut t = Tally::new(
        "series.division_roundtrip",
        format!("m <= 6, degree {degree}"),
    );
    // Deterministic small numerators.
    let numerators: Vec<TruncatedSeries> = (0..8i64)
        .map(|s| {
            let coeffs = (0..=degree as i64)
                .map(|k| ((k * 7 + s * 13) % 11) - 5)
                .collect();
            TruncatedSeries::from_coefficients(coeffs, degree)
        })
        .collect();
    for m in 1..=6 {
        let d = series::denominator(m, degree);
        let one_minus_x = TruncatedSeries::from_coefficients(vec![1, -1], degree);
        let dens = [
            d.clone(),
            one_minus_x.mul(&d).expect("small"),
            d.neg().expect("small"),
        ];
        for den in &dens {
            for a in &numerators {
                let back = a.div(den).and_then(|q| q.mul(den));
                t.equal(back.as_ref(), Ok(a), || format!("m={m}, numerator {a:?}"));
            }
        }
    }
    t.finish()
}

fn series_recurrence_gfs(_: &Context) -> CheckResult {
    let mut t = Tally::new(
        "series.recurrence_gfs",
        format!("m <= 6, degree {SERIES_DEGREE}"),
    );
    let count = SERIES_DEGREE + 1;
    for m in 1..=6u32 {
        let pairs = [
            (
                "G",
                series::generalized_fibonacci_gf(m, SERIES_DEGREE),
                RecurrenceSequence::generalized_fibonacci(m),
            ),
            (
                "H",
                series::generalized_lucas_gf(m, SERIES_DEGREE),
                RecurrenceSequence::generalized_lucas(m),
            ),
            (
                "P",
                series::colored_composition_gf(m, SERIES_DEGREE),
                RecurrenceSequence::colored_composition(m),
            ),
        ];
        for (family, gf, seq) in pairs {
            if family == "P" && m < 2 {
                continue;
            }
            let (Some(gf), Some(seq)) = (
                t.ok(gf, || format!("{family} m={m}")),
                t.ok(seq, || format!("{family} m={m}")),
            ) else {
                continue;
            };
            if let Some(terms) = t.ok(seq.terms(count), || format!("{family} m={m}")) {
                t.equal(gf.coefficients(), terms.as_slice(), || {
                    format!("{family}^({m})")
                });
            }
        }
    }
    t.finish()
}

fn series_measured_gfs(ctx: &Context) -> CheckResult {
    let c = &ctx.config;
    let degree = c.max_order as usize;
    let mut t = Tally::new(
        "series.measured_gfs",
        format!("n <= {}, m <= {}", c.max_order, c.max_m),
    );
    for m in 0..=c.max_m {
        let skew = t.ok(series::suffix_skew_gf(m, degree), || {
            format!("skew gf m={m}")
        });
        let length = t.ok(series::suffix_length_gf(m, degree), || {
            format!("length gf m={m}")
        });
        let zeros = (m >= 1)
            .then(|| {
                t.ok(series::segment_zeros_gf(m, degree), || {
                    format!("zeros gf m={m}")
                })
            })
            .flatten();
        let ones = (m >= 1)
            .then(|| {
                t.ok(series::segment_ones_gf(m, degree), || {
                    format!("ones gf m={m}")
                })
            })
            .flatten();
        for (n, d) in ctx.decompositions(1) {
            let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
                continue;
            };
            let k = d.suffix_k(m);
            let n = n as usize;
            if let Some(s) = &skew {
                t.equal(s.coefficient(n), Some(k.skew()), || {
                    format!("sk(K_{m}), n={n}")
                });
            }
            if let Some(s) = &length {
                t.equal(s.coefficient(n), Some(k.len() as i64), || {
                    format!("|K_{m}|, n={n}")
                });
            }
            if m >= 1 {
                let l = d.segment_l(m);
                if let Some(s) = &zeros {
                    t.equal(s.coefficient(n), Some(l.count_zeros() as i64), || {
                        format!("zeros(L_{m}), n={n}")
                    });
                }
                if let Some(s) = &ones {
                    t.equal(s.coefficient(n), Some(l.count_ones() as i64), || {
                        format!("ones(L_{m}), n={n}")
                    });
                }
            }
        }
    }
    t.finish()
}

fn series_offset_relations(ctx: &Context) -> CheckResult {
    let c = &ctx.config;
    let mut t = Tally::new(
        "series.offset_relations",
        format!("m <= {}, degree {SERIES_DEGREE}", c.max_m),
    );
    for m in 0..=c.max_m {
        let Some(skew) = t.ok(series::suffix_skew_gf(m, SERIES_DEGREE), || {
            format!("m={m}")
        }) else {
            continue;
        };
        let Some(length) = t.ok(series::suffix_length_gf(m, SERIES_DEGREE), || {
            format!("m={m}")
        }) else {
            continue;
        };
        t.equal(skew.coefficient(0), Some(0), || {
            format!("skew gf m={m} at x^0")
        });
        t.equal(length.coefficient(0), Some(0), || {
            format!("length gf m={m} at x^0")
        });
        for n in 1..=SERIES_DEGREE {
            let g = recurrences::generalized_fibonacci(m + 1, n as u64 - 1).map(|g| -g);
            t.equal(skew.coefficient(n).ok_or(()), g.map_err(|_| ()), || {
                format!("skew m={m}, n={n}")
            });
            let h = recurrences::generalized_lucas(m + 1, n as u64);
            t.equal(length.coefficient(n).ok_or(()), h.map_err(|_| ()), || {
                format!("length m={m}, n={n}")
            });
        }
    }
    t.finish()
}

fn compositions_order_one_counts(ctx: &Context) -> CheckResult {
    let mut t = Tally::new(
        "compositions.order_one_counts",
        format!("2 <= n <= {}", ctx.config.max_order),
    );
    for (n, d) in ctx.decompositions(2) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        let Some(phi) = t.ok(compositions::phi_multiset(&d), || format!("n={n}")) else {
            continue;
        };
        for k in 2..=n + 2 {
            let want = match k {
                k if k < n => {
                    recurrences::fibonacci(u64::from(n - k - 1)).expect("in range") as u64
                }
                k if k == n => 1,
                _ => 0,
            };
            t.equal(phi.multiplicity(k, 0), want, || format!("c({n},{k})"));
        }
        t.check(phi.iter().all(|(p, _)| p.color == 0), || {
            format!("n={n}: colored part in Phi")
        });
    }
    t.finish()
}

fn compositions_plain_count(_: &Context) -> CheckResult {
    let top = compositions::MAX_ENUMERATION_TOTAL;
    let mut t = Tally::new("compositions.plain_count", format!("N <= {top}"));
    for total in 0..=top {
        let Some(all) = t.ok(compositions::compositions_ge2(total), || {
            format!("N={total}")
        }) else {
            continue;
        };
        let want = match total {
            0 => 1,
            _ => recurrences::fibonacci(u64::from(total) - 1).expect("in range") as usize,
        };
        t.equal(all.len(), want, || format!("N={total}"));
        let valid = all
            .iter()
            .all(|c| c.iter().all(|&p| p >= 2) && c.iter().sum::<u32>() == total);
        t.check(valid && all.windows(2).all(|w| w[0] < w[1]), || {
            format!("N={total}: invalid or unordered composition")
        });
    }
    t.finish()
}

fn compositions_colored_count(ctx: &Context) -> CheckResult {
    let top_m = ctx.config.max_m.clamp(1, COLORED_MAX_M);
    let mut t = Tally::new(
        "compositions.colored_count",
        format!("m <= {top_m}, 1 <= n <= {COLORED_MAX_N}"),
    );
    for m in 1..=top_m {
        for n in 1..=COLORED_MAX_N {
            let Some(all) = t.ok(compositions::colored_compositions(m, n), || {
                format!("m={m}, n={n}")
            }) else {
                continue;
            };
            let want = recurrences::colored_composition_term(m + 1, u64::from(n + m - 1));
            t.equal(Ok(all.len() as i64), want, || format!("d({m},{n})"));
            let valid = all.iter().all(|c| c.is_admissible(m) && c.total() == n);
            let distinct = all.windows(2).all(|w| w[0] != w[1]) && {
                let set: std::collections::HashSet<&ColoredComposition> = all.iter().collect();
                set.len() == all.len()
            };
            t.check(valid && distinct, || {
                format!("m={m}, n={n}: invalid or repeated composition")
            });
            if m == 1 {
                let plain: Option<Vec<Vec<u32>>> = compositions::compositions_ge2(n).ok();
                let stripped: Vec<Vec<u32>> = all
                    .iter()
                    .map(|c| c.parts.iter().map(|p| p.value).collect())
                    .collect();
                t.equal(Some(stripped), plain, || {
                    format!("1-colored vs plain, n={n}")
                });
            }
        }
    }
    t.finish()
}

fn compositions_primitive_series(ctx: &Context) -> CheckResult {
    let top_m = ctx.config.max_m.clamp(1, PRIMITIVE_SERIES_MAX_M);
    let top_n = ctx.config.max_order.min(PRIMITIVE_SERIES_MAX_N);
    let mut t = Tally::new(
        "compositions.primitive_series",
        format!("m <= {top_m}, 2 <= n <= {top_n}, all k"),
    );
    for (n, d) in ctx.decompositions(2).filter(|(n, _)| *n <= top_n) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        for m in 1..=top_m {
            let Some(psi) = t.ok(compositions::psi_multiset(&d, m), || {
                format!("m={m}, n={n}")
            }) else {
                continue;
            };
            for k in 2..=n + 1 {
                let gf = t.ok(
                    series::primitive_count_gf(m, k as usize, n as usize),
                    || format!("k={k}"),
                );
                if let Some(gf) = gf {
                    t.equal(
                        Some(psi.multiplicity(k, 0) as i64),
                        gf.coefficient(n as usize),
                        || format!("c({m},{n},{k})"),
                    );
                }
            }
        }
    }
    t.finish()
}

fn compositions_color_symmetry(ctx: &Context) -> CheckResult {
    let c = &ctx.config;
    let mut t = Tally::new(
        "compositions.color_symmetry",
        format!("m <= {}, 2 <= n <= {}", c.max_m.max(1), c.max_order),
    );
    for (n, d) in ctx.decompositions(2) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        for m in 1..=c.max_m.max(1) {
            let Some(psi) = t.ok(compositions::psi_multiset(&d, m), || {
                format!("m={m}, n={n}")
            }) else {
                continue;
            };
            for (part, _) in psi.iter() {
                t.check(part.is_admissible(m), || {
                    format!("m={m}, n={n}: inadmissible {part}")
                });
            }
            for k in 2..=n {
                let base = psi.multiplicity(k, 0);
                for color in 1..=(k - 2).min(m - 1) {
                    t.equal(psi.multiplicity(k, color), base, || {
                        format!("m={m}, n={n}, k={k}, color {color}")
                    });
                }
            }
        }
    }
    t.finish()
}

fn compositions_primitive_totals(ctx: &Context) -> CheckResult {
    let c = &ctx.config;
    let mut t = Tally::new(
        "compositions.primitive_totals",
        format!("m <= {}, 2 <= n <= {}", c.max_m.max(1), c.max_order),
    );
    for (n, d) in ctx.decompositions(2) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        for m in 1..=c.max_m.max(1) {
            let Some(psi) = t.ok(compositions::psi_multiset(&d, m), || {
                format!("m={m}, n={n}")
            }) else {
                continue;
            };
            let l = d.segment_l(m);
            t.equal(
                (psi.zeros(), psi.ones()),
                (l.count_zeros(), l.count_ones()),
                || format!("m={m}, n={n}"),
            );
        }
    }
    t.finish()
}

fn compositions_psi_phi(ctx: &Context) -> CheckResult {
    let top = ctx.config.max_order.min(16);
    let mut t = Tally::new(
        "compositions.psi_reduces_to_phi",
        format!("2 <= n <= {top}"),
    );
    for (n, d) in ctx.decompositions(2).filter(|(n, _)| *n <= top) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        let psi = compositions::psi_multiset(&d, 1);
        let phi = compositions::phi_multiset(&d);
        t.equal(psi, phi, || format!("n={n}"));
    }
    t.finish()
}

fn compositions_lyndon_root(_: &Context) -> CheckResult {
    let mut t = Tally::new("compositions.lyndon_root", "|w| <= 10");
    for len in 1..=10 {
        for w in oracle::all_words(len) {
            let word = word_of(&w);
            let Some(root) = t.ok(compositions::lyndon_root(&word), || show(&w)) else {
                continue;
            };
            let r = root.to_symbols();
            let lyndon = oracle::is_lyndon(&r) && len % r.len() == 0;
            let power: Vec<u8> = r.iter().copied().cycle().take(len).collect();
            let same_class = oracle::rotations(&w).any(|rot| rot == power);
            t.check(lyndon && same_class, || format!("{} -> {root}", show(&w)));
        }
    }
    t.finish()
}

fn tables_published(ctx: &Context) -> CheckResult {
    let top = ctx.config.max_order.min(10);
    let mut t = Tally::new("tables.published", format!("n <= {top}"));
    let mut skew = Vec::new();
    let mut length = Vec::new();
    for (n, d) in ctx.decompositions(1).filter(|(n, _)| *n <= top) {
        let Some(d) = t.ok(d.clone(), || format!("n={n}")) else {
            continue;
        };
        let cells: Vec<_> = (0..top)
            .map(|m| (m < n).then(|| d.suffix_k_stats(m)))
            .collect();
        skew.push(cells.iter().map(|c| c.map(|s| s.0)).collect());
        length.push(cells.iter().map(|c| c.map(|s| s.1)).collect());
    }
    let computed = ford::BreakpointTables {
        max_order: top,
        skew,
        length,
    };
    let mismatches = tables::published_mismatches(&computed);
    t.check(mismatches.is_empty(), || {
        let (n, m, s, l) = mismatches[0];
        format!("n={n}, m={m}: computed skew {s:?}, length {l:?}")
    });
    t.finish()
}
