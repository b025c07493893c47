//! The `lexford` command line. Parsing and dispatch live here so the
//! binary stays a thin shim and the commands can be driven from tests.
//!
//! Every command renders its whole output to a string before anything is
//! printed, so a failing command never leaves partial output behind.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::compositions;
use crate::error::{Error, Result};
use crate::ford::{self, Limits};
use crate::parallel::Execution;
use crate::recurrences::RecurrenceSequence;
use crate::tables;
use crate::verify::{self, VerifyConfig};
use crate::words;

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Longest sequence `seq` will print.
pub const MAX_SEQ_COUNT: usize = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "lexford",
    version,
    about = "Lex-least binary de Bruijn sequences and their breakpoint identities"
)]
pub struct Cli {
    /// Run sequentially even when built with the `parallel` feature.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Ford sequence of the given order.
    Generate {
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Method::Concat)]
        method: Method,
    },
    /// Prefix skew of every position, with breakpoint labels.
    Profile {
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Skew and length of every suffix K_m for n up to --max-order.
    Tables {
        #[arg(long, default_value_t = 10)]
        max_order: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Terms of a recurrence family, starting from index 0.
    Seq {
        #[arg(value_enum)]
        family: Family,
        /// Recurrence order; required for G, H and P.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count (or list) the m-colored compositions of n into parts >= 2.
    Compositions {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        list: bool,
    },
    /// Run the whole identity suite.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_MAX_ORDER)]
        max_order: u32,
        #[arg(long, default_value_t = verify::DEFAULT_MAX_M)]
        max_m: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Concat,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "F")]
    F,
    #[value(name = "L")]
    L,
    #[value(name = "G")]
    G,
    #[value(name = "H")]
    H,
    #[value(name = "P")]
    P,
}

/// What a command produced: the exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn success(stdout: String) -> Self {
        Self {
            code: EXIT_SUCCESS,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, limits: &Limits) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, limits),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::success(text)
            }
        }
    }
}

pub fn run(cli: &Cli, limits: &Limits) -> Outcome {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let rendered = match &cli.command {
        Command::Generate { order, method } => generate(*order, *method, limits),
        Command::Profile { order, format } => profile(*order, *format, limits),
        Command::Tables { max_order, format } => {
            tables_command(*max_order, *format, limits, execution)
        }
        Command::Seq {
            family,
            m,
            count,
            format,
        } => seq(*family, *m, *count, *format),
        Command::Compositions { n, m, list } => compositions_command(*n, *m, *list),
        Command::Verify {
            max_order,
            max_m,
            format,
        } => {
            let config = VerifyConfig {
                max_order: *max_order,
                max_m: *max_m,
                execution,
                limits: *limits,
            };
            return verify_command(&config, *format);
        }
    };
    match rendered {
        Ok(out) => Outcome::success(out),
        Err(e) => Outcome::usage(e),
    }
}

fn reject_format(format: Format, allowed: &[Format], command: &str) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{command} does not support --format {}",
            format
                .to_possible_value()
                .expect("no skipped variants")
                .get_name()
        )))
    }
}

pub fn generate(order: u32, method: Method, limits: &Limits) -> Result<String> {
    let sequence = match method {
        Method::Concat => ford::ford_by_concatenation_with(order, limits)?,
        Method::Greedy => ford::ford_by_greedy_with(order, limits)?,
    };
    Ok(format!("{}\n", sequence.word()))
}

#[derive(Serialize)]
struct ProfileRow {
    position: usize,
    bit: u8,
    skew: i64,
    suffix_skew: i64,
    breakpoint: Option<u32>,
}

#[derive(Serialize)]
struct ProfileDoc {
    order: u32,
    rows: Vec<ProfileRow>,
}

/// One row per prefix. `suffix_skew` is the skew of everything after the
/// position, which is the negated prefix skew because the whole sequence
/// is balanced. `breakpoint` is `i` where `0^i 1^(n-i)` ends, `n` on the
/// initial 0 and `0` on the final 1.
pub fn profile(order: u32, format: Format, limits: &Limits) -> Result<String> {
    reject_format(format, &[Format::Csv, Format::Json], "profile")?;
    let sequence = ford::ford_by_concatenation_with(order, limits)?;
    let decomposition = ford::try_decompose(&sequence)?;
    let mut labels = vec![None; sequence.len() + 1];
    for (position, label) in decomposition.breakpoints() {
        labels[position] = Some(label);
    }
    let total = sequence.word().skew();
    let rows: Vec<ProfileRow> = words::prefix_skew_profile(sequence.word())
        .into_iter()
        .zip(sequence.word().iter())
        .enumerate()
        .map(|(i, (skew, bit))| ProfileRow {
            position: i + 1,
            bit: u8::from(bit),
            skew,
            suffix_skew: total - skew,
            breakpoint: labels[i + 1],
        })
        .collect();
    Ok(match format {
        Format::Json => {
            let doc = ProfileDoc { order, rows };
            serde_json::to_string_pretty(&doc).expect("profile serializes") + "\n"
        }
        _ => {
            let mut out = String::from("position,bit,skew,suffix_skew,breakpoint\n");
            for r in &rows {
                let label = r.breakpoint.map(|b| b.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{label}",
                    r.position, r.bit, r.skew, r.suffix_skew
                );
            }
            out
        }
    })
}

pub fn tables_command(
    max_order: u32,
    format: Format,
    limits: &Limits,
    execution: Execution,
) -> Result<String> {
    let t = ford::breakpoint_tables(max_order, limits, execution)?;
    Ok(match format {
        Format::Text => tables::render_text(&t),
        Format::Csv => tables::render_csv(&t),
        Format::Json => tables::render_json(&t),
    })
}

pub fn seq(family: Family, m: Option<u32>, count: usize, format: Format) -> Result<String> {
    if count > MAX_SEQ_COUNT {
        return Err(Error::EnumerationCap {
            what: "sequence terms",
            requested: count as u64,
            cap: MAX_SEQ_COUNT as u64,
        });
    }
    let need_m = || {
        m.ok_or_else(|| Error::Unsupported("--m is required for the G, H and P families".into()))
    };
    let sequence = match family {
        Family::F => RecurrenceSequence::new("F", vec![0, 1])?,
        Family::L => RecurrenceSequence::new("L", vec![2, 1])?,
        Family::G => RecurrenceSequence::generalized_fibonacci(need_m()?)?,
        Family::H => RecurrenceSequence::generalized_lucas(need_m()?)?,
        Family::P => RecurrenceSequence::colored_composition(need_m()?)?,
    };
    let terms = sequence.terms(count)?;
    let strings: Vec<String> = terms.iter().map(i64::to_string).collect();
    Ok(match format {
        Format::Text => strings.iter().map(|s| format!("{s}\n")).collect(),
        Format::Csv => format!("{}\n", strings.join(",")),
        Format::Json => serde_json::to_string(&terms).expect("terms serialize") + "\n",
    })
}

pub fn compositions_command(n: u32, m: u32, list: bool) -> Result<String> {
    if list {
        let all = compositions::colored_compositions(m, n)?;
        return Ok(all.iter().map(|c| format!("{c}\n")).collect());
    }
    Ok(format!(
        "{}\n",
        compositions::colored_composition_count(m, n)?
    ))
}

/// Exit 1 with the first counterexample on stderr when any check fails.
pub fn verify_command(config: &VerifyConfig, format: Format) -> Outcome {
    if let Err(e) = reject_format(format, &[Format::Text, Format::Json], "verify") {
        return Outcome::usage(e);
    }
    let report = match verify::run(config) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let stdout = match format {
        Format::Json => report.render_json(),
        _ => report.render_text(),
    };
    match report.first_failure() {
        None => Outcome::success(stdout),
        Some(failed) => Outcome {
            code: EXIT_VERIFY_FAILED,
            stdout,
            stderr: format!(
                "verification failed: {} [{}]: {}\n",
                failed.name,
                failed.parameters,
                failed
                    .counterexample
                    .as_deref()
                    .unwrap_or("no counterexample recorded")
            ),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        run_args(
            std::iter::once("lexford").chain(args.iter().copied()),
            &Limits::default(),
        )
    }

    #[test]
    fn generate_examples() {
        assert_eq!(
            run(&["generate", "--order", "4"]).stdout,
            "0000100110101111\n"
        );
        assert_eq!(run(&["generate", "--order", "1"]).stdout, "01\n");
        assert_eq!(
            run(&["generate", "--order", "3", "--method", "greedy"]).stdout,
            "00010111\n"
        );
    }

    #[test]
    fn caps_are_usage_errors() {
        let out = run(&["generate", "--order", "29"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stdout.is_empty() && out.stderr.starts_with("error:"));
        assert_eq!(
            run(&["generate", "--order", "15", "--method", "greedy"]).code,
            EXIT_USAGE
        );
        assert_eq!(run(&["generate", "--order", "0"]).code, EXIT_USAGE);
        assert_eq!(run(&["generate"]).code, EXIT_USAGE);
        assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    }

    #[test]
    fn seq_examples() {
        assert_eq!(
            run(&["seq", "G", "--m", "2", "--count", "6"]).stdout,
            "1\n1\n2\n3\n5\n8\n"
        );
        assert_eq!(
            run(&["seq", "H", "--m", "2", "--count", "5", "--format", "csv"]).stdout,
            "2,1,3,4,7\n"
        );
        assert_eq!(
            run(&["seq", "P", "--m", "3", "--count", "7", "--format", "json"]).stdout,
            "[0,1,0,1,2,3,6]\n"
        );
        assert_eq!(run(&["seq", "P", "--m", "1"]).code, EXIT_USAGE);
        assert_eq!(run(&["seq", "G"]).code, EXIT_USAGE);
        assert_eq!(run(&["seq", "F", "--count", "100"]).code, EXIT_USAGE);
    }

    #[test]
    fn compositions_examples() {
        assert_eq!(run(&["compositions", "--n", "5", "--m", "2"]).stdout, "6\n");
        assert_eq!(run(&["compositions", "--n", "1", "--m", "3"]).stdout, "0\n");
        let listed = run(&["compositions", "--n", "5", "--m", "2", "--list"]).stdout;
        let mut lines: Vec<&str> = listed.lines().collect();
        lines.sort_unstable();
        assert_eq!(lines, ["2+3", "2+3'", "3'+2", "3+2", "5", "5'"]);
        assert_eq!(
            run(&["compositions", "--n", "40", "--m", "2", "--list"]).code,
            EXIT_USAGE
        );
    }

    #[test]
    fn profile_rows_and_labels() {
        let csv = run(&["profile", "--order", "3"]).stdout;
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "position,bit,skew,suffix_skew,breakpoint");
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[1], "1,0,1,-1,3");
        assert_eq!(lines[8], "8,1,0,0,0");
        assert_eq!(
            run(&["profile", "--order", "3", "--format", "text"]).code,
            EXIT_USAGE
        );
    }

    #[test]
    fn verify_small_scale() {
        let out = run(&["verify", "--max-order", "6", "--max-m", "4"]);
        assert_eq!(out.code, EXIT_SUCCESS, "{}", out.stderr);
        assert!(out.stdout.ends_with("checks)\n"));
    }

    #[test]
    fn help_goes_to_stdout() {
        let out = run(&["--help"]);
        assert_eq!(out.code, EXIT_SUCCESS);
        assert!(out.stdout.contains("generate"));
    }
}
