//! Rendering of the breakpoint tables, and the published values they are
//! checked against.

use serde::Serialize;

use crate::ford::BreakpointTables;

/// Published skews of `K_m` for `1 <= n <= 10` (rows), `0 <= m <= 9`.
#[rustfmt::skip]
pub const PUBLISHED_SKEW: [[Option<i64>; 10]; 10] = [
    [Some(-1), None, None, None, None, None, None, None, None, None],
    [Some(-1), Some(-1), None, None, None, None, None, None, None, None],
    [Some(-1), Some(-2), Some(-1), None, None, None, None, None, None, None],
    [Some(-1), Some(-3), Some(-3), Some(-1), None, None, None, None, None, None],
    [Some(-1), Some(-5), Some(-5), Some(-4), Some(-1), None, None, None, None, None],
    [Some(-1), Some(-8), Some(-9), Some(-7), Some(-5), Some(-1), None, None, None, None],
    [Some(-1), Some(-13), Some(-17), Some(-13), Some(-9), Some(-6), Some(-1), None, None, None],
    [Some(-1), Some(-21), Some(-31), Some(-25), Some(-17), Some(-11), Some(-7), Some(-1), None, None],
    [Some(-1), Some(-34), Some(-57), Some(-49), Some(-33), Some(-21), Some(-13), Some(-8), Some(-1), None],
    [Some(-1), Some(-55), Some(-105), Some(-94), Some(-65), Some(-41), Some(-25), Some(-15), Some(-9), Some(-1)],
];

/// Published lengths of `K_m`, same layout as [`PUBLISHED_SKEW`].
#[rustfmt::skip]
pub const PUBLISHED_LENGTH: [[Option<u64>; 10]; 10] = [
    [Some(1), None, None, None, None, None, None, None, None, None],
    [Some(1), Some(3), None, None, None, None, None, None, None, None],
    [Some(1), Some(4), Some(7), None, None, None, None, None, None, None],
    [Some(1), Some(7), Some(11), Some(15), None, None, None, None, None, None],
    [Some(1), Some(11), Some(21), Some(26), Some(31), None, None, None, None, None],
    [Some(1), Some(18), Some(39), Some(51), Some(57), Some(63), None, None, None, None],
    [Some(1), Some(29), Some(71), Some(99), Some(113), Some(120), Some(127), None, None, None],
    [Some(1), Some(47), Some(131), Some(191), Some(223), Some(239), Some(247), Some(255), None, None],
    [Some(1), Some(76), Some(241), Some(367), Some(439), Some(475), Some(493), Some(502), Some(511), None],
    [Some(1), Some(123), Some(443), Some(708), Some(863), Some(943), Some(983), Some(1003), Some(1013), Some(1023)],
];

/// Absent cells (`m >= n`) in every output format.
pub const ABSENT: &str = ".";

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| ABSENT.to_string(), T::to_string)
}

fn grid<T: ToString>(rows: &[Vec<Option<T>>]) -> Vec<Vec<String>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            std::iter::once((i + 1).to_string())
                .chain(row.iter().map(cell))
                .collect()
        })
        .collect()
}

fn csv_block<T: ToString>(title: &str, rows: &[Vec<Option<T>>], columns: u32) -> String {
    let mut out = String::new();
    let header: Vec<String> = std::iter::once(title.to_string())
        .chain((0..columns).map(|m| m.to_string()))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in grid(rows) {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn text_block<T: ToString>(title: &str, rows: &[Vec<Option<T>>], columns: u32) -> String {
    let header: Vec<String> = std::iter::once("n".to_string())
        .chain((0..columns).map(|m| m.to_string()))
        .collect();
    let mut body = vec![header];
    body.extend(grid(rows));
    let width = body.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = format!("{title}\n");
    for row in body {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Two CSV blocks, `skew` then `length`, separated by a blank line.
pub fn render_csv(t: &BreakpointTables) -> String {
    format!(
        "{}\n{}",
        csv_block("skew", &t.skew, t.max_order),
        csv_block("length", &t.length, t.max_order)
    )
}

pub fn render_text(t: &BreakpointTables) -> String {
    format!(
        "{}\n{}",
        text_block("sk(K_m)", &t.skew, t.max_order),
        text_block("|K_m|", &t.length, t.max_order)
    )
}

#[derive(Serialize)]
struct TablesJson<'a> {
    max_order: u32,
    skew: &'a [Vec<Option<i64>>],
    length: &'a [Vec<Option<u64>>],
}

pub fn render_json(t: &BreakpointTables) -> String {
    let doc = TablesJson {
        max_order: t.max_order,
        skew: &t.skew,
        length: &t.length,
    };
    serde_json::to_string_pretty(&doc).expect("tables serialize") + "\n"
}

/// Cells of `t` that disagree with the published tables, as
/// `(n, m, computed skew, computed length)`. Only rows and columns present
/// in both are compared.
pub fn published_mismatches(t: &BreakpointTables) -> Vec<(u32, u32, Option<i64>, Option<u64>)> {
    let mut out = Vec::new();
    for (r, (srow, lrow)) in t.skew.iter().zip(&t.length).enumerate().take(10) {
        for m in 0..srow.len().min(10) {
            if srow[m] != PUBLISHED_SKEW[r][m] || lrow[m] != PUBLISHED_LENGTH[r][m] {
                out.push((r as u32 + 1, m as u32, srow[m], lrow[m]));
            }
        }
    }
    out
}
