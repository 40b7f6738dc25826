//! Plain-text file formats.
//!
//! A document is a sequence of sections, each opened by a header line:
//!
//! ```text
//! # comment
//! cycleset n        n rows of n entries, row x holding x·1 … x·n
//! solution n        n σ rows, an optional blank line, n τ rows
//! dcocycle n m      n·n·m rows, for x, y, s nested in that order
//! acocycle p n      n rows of n residues, entry (x,y) = f(x,y)
//! action n m        n rows of m entries, row x holding s ↦ xs
//! partition n       one line, labels `1 2 1 2` or blocks `{1,3}{2,4}`
//! ```
//!
//! Points are 1-based. A row may also be written in cycle notation.
//! `dcocycle` and `partition` sections may be followed by a line
//! `labels a b c` naming the fiber elements.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cycle_set::CycleSet;
use crate::extension::{AbelianCocycle, CycleSetAction, DynamicalCocycle};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::solution::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// A parsed but not yet validated section; `line` is the header's line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Section {
    CycleSet {
        line: usize,
        rows: Vec<Vec<usize>>,
    },
    Solution {
        line: usize,
        sigma: Vec<Vec<usize>>,
        tau: Vec<Vec<usize>>,
    },
    DCocycle {
        line: usize,
        n: usize,
        labels: Vec<String>,
        rows: Vec<Vec<usize>>,
    },
    ACocycle {
        line: usize,
        p: u32,
        matrix: Vec<Vec<u32>>,
    },
    Action {
        line: usize,
        n: usize,
        m: usize,
        rows: Vec<Vec<usize>>,
    },
    Partition {
        line: usize,
        partition: Partition,
        labels: Option<Vec<String>>,
    },
}

impl Section {
    pub fn kind(&self) -> &'static str {
        match self {
            Section::CycleSet { .. } => "cycleset",
            Section::Solution { .. } => "solution",
            Section::DCocycle { .. } => "dcocycle",
            Section::ACocycle { .. } => "acocycle",
            Section::Action { .. } => "action",
            Section::Partition { .. } => "partition",
        }
    }

    pub fn line(&self) -> usize {
        match *self {
            Section::CycleSet { line, .. }
            | Section::Solution { line, .. }
            | Section::DCocycle { line, .. }
            | Section::ACocycle { line, .. }
            | Section::Action { line, .. }
            | Section::Partition { line, .. } => line,
        }
    }
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let all: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).collect();
        let last = all.len() + 1;
        let lines = all
            .into_iter()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { lines, pos: 0, last }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        let item = self
            .peek()
            .ok_or_else(|| err(self.last, format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok(item)
    }

    fn labels(&mut self) -> Option<(usize, Vec<String>)> {
        let (line, text) = self.peek()?;
        let rest = text.strip_prefix("labels")?;
        if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
            return None;
        }
        self.pos += 1;
        Some((line, rest.split_whitespace().map(str::to_string).collect()))
    }
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| err(line, format!("expected {what}, found `{token}`")))
}

/// A row of `len` points in `1..=degree`, either as integers or, when
/// `cycles` is set, in cycle notation. Returns 0-based entries.
fn row(line: usize, text: &str, len: usize, degree: usize, cycles: bool) -> Result<Vec<usize>, FormatError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let cycle_like = text.starts_with(['(', '[']) || text == "id";
    if !(cycles && cycle_like) {
        if tokens.len() != len {
            return Err(err(line, format!("expected {len} entries, found {}", tokens.len())));
        }
        return tokens
            .iter()
            .map(|t| {
                let v: usize = number(line, t, "an integer")?;
                if v == 0 || v > degree {
                    Err(err(line, format!("entry {v} is outside 1..{degree}")))
                } else {
                    Ok(v - 1)
                }
            })
            .collect();
    }
    Permutation::parse(text, degree)
        .map(|p| p.images().to_vec())
        .map_err(|e| err(line, e.to_string()))
}

fn rows(
    lines: &mut Lines,
    count: usize,
    len: usize,
    degree: usize,
    cycles: bool,
    what: &str,
) -> Result<Vec<Vec<usize>>, FormatError> {
    (0..count)
        .map(|_| {
            let (line, text) = lines.next(what)?;
            row(line, text, len, degree, cycles)
        })
        .collect()
}

fn header_args(line: usize, args: &[&str], count: usize, usage: &str) -> Result<Vec<usize>, FormatError> {
    if args.len() != count {
        return Err(err(line, format!("header must read `{usage}`")));
    }
    let values: Vec<usize> = args
        .iter()
        .map(|a| number(line, a, "a positive integer"))
        .collect::<Result<_, _>>()?;
    if values.contains(&0) {
        return Err(err(line, "sizes must be positive"));
    }
    Ok(values)
}

pub fn parse_document(text: &str) -> Result<Vec<Section>, FormatError> {
    let mut lines = Lines::new(text);
    let mut sections = Vec::new();
    while let Some((line, header)) = lines.peek() {
        lines.pos += 1;
        let mut words = header.split_whitespace();
        let keyword = words.next().unwrap_or("");
        let args: Vec<&str> = words.collect();
        let section = match keyword {
            "cycleset" => {
                let n = header_args(line, &args, 1, "cycleset n")?[0];
                Section::CycleSet {
                    line,
                    rows: rows(&mut lines, n, n, n, true, "a cycle set row")?,
                }
            }
            "solution" => {
                let n = header_args(line, &args, 1, "solution n")?[0];
                let sigma = rows(&mut lines, n, n, n, true, "a σ row")?;
                let tau = rows(&mut lines, n, n, n, true, "a τ row")?;
                Section::Solution { line, sigma, tau }
            }
            "dcocycle" => {
                let v = header_args(line, &args, 2, "dcocycle n m")?;
                let (n, m) = (v[0], v[1]);
                let labels = match lines.labels() {
                    Some((l, labels)) if labels.len() != m => {
                        return Err(err(l, format!("expected {m} labels, found {}", labels.len())))
                    }
                    Some((_, labels)) => labels,
                    None => (1..=m).map(|i| i.to_string()).collect(),
                };
                let rows = rows(&mut lines, n * n * m, m, m, true, "a cocycle row")?;
                Section::DCocycle { line, n, labels, rows }
            }
            "acocycle" => {
                let v = header_args(line, &args, 2, "acocycle p n")?;
                let p = u32::try_from(v[0]).map_err(|_| err(line, "modulus too large"))?;
                let n = v[1];
                let matrix = (0..n)
                    .map(|_| {
                        let (l, text) = lines.next("a residue row")?;
                        let entries: Vec<u32> = text
                            .split_whitespace()
                            .map(|t| number(l, t, "a residue"))
                            .collect::<Result<_, _>>()?;
                        if entries.len() != n {
                            return Err(err(l, format!("expected {n} residues, found {}", entries.len())));
                        }
                        Ok(entries)
                    })
                    .collect::<Result<_, _>>()?;
                Section::ACocycle { line, p, matrix }
            }
            "action" => {
                let v = header_args(line, &args, 2, "action n m")?;
                let (n, m) = (v[0], v[1]);
                // Action rows are checked for bijectivity later, with a witness.
                let rows = rows(&mut lines, n, m, m, false, "an action row")?;
                Section::Action { line, n, m, rows }
            }
            "partition" => {
                let n = header_args(line, &args, 1, "partition n")?[0];
                let (l, text) = lines.next("a partition")?;
                let partition = Partition::parse(text, n).map_err(|e| err(l, e.to_string()))?;
                let labels = lines.labels().map(|(_, labels)| labels);
                Section::Partition { line, partition, labels }
            }
            "labels" => return Err(err(line, "`labels` must follow a dcocycle or partition header")),
            _ => return Err(err(line, format!("unknown section header `{header}`"))),
        };
        sections.push(section);
    }
    if sections.is_empty() {
        return Err(err(lines.last, "empty document"));
    }
    Ok(sections)
}

fn push_row(out: &mut String, entries: impl IntoIterator<Item = usize>) {
    let parts: Vec<String> = entries.into_iter().map(|v| (v + 1).to_string()).collect();
    out.push_str(&parts.join(" "));
    out.push('\n');
}

pub fn emit_cycle_set(x: &CycleSet) -> String {
    let mut out = format!("cycleset {}\n", x.size());
    for r in x.table_rows() {
        push_row(&mut out, r);
    }
    out
}

pub fn emit_solution(s: &Solution) -> String {
    let mut out = format!("solution {}\n", s.size());
    for p in s.sigmas() {
        push_row(&mut out, p.images().iter().copied());
    }
    out.push('\n');
    for p in s.taus() {
        push_row(&mut out, p.images().iter().copied());
    }
    out
}

fn default_labels(labels: &[String], start: usize) -> bool {
    labels
        .iter()
        .enumerate()
        .all(|(i, l)| *l == (i + start).to_string())
}

/// The cocycle section alone; prepend [`emit_cycle_set`] of the base for a
/// self-contained file.
pub fn emit_dcocycle(c: &DynamicalCocycle) -> String {
    let n = c.base().size();
    let m = c.fiber_size();
    let mut out = format!("dcocycle {n} {m}\n");
    if !default_labels(c.labels(), 1) {
        let _ = writeln!(out, "labels {}", c.labels().join(" "));
    }
    for p in c.maps() {
        push_row(&mut out, p.images().iter().copied());
    }
    out
}

pub fn emit_acocycle(c: &AbelianCocycle) -> String {
    let n = c.base().size();
    let mut out = format!("acocycle {} {n}\n", c.modulus());
    for r in c.matrix() {
        let parts: Vec<String> = r.iter().map(u32::to_string).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

pub fn emit_action(a: &CycleSetAction) -> String {
    let (n, m) = (a.base().size(), a.module().size());
    let mut out = format!("action {n} {m}\n");
    for x in 0..n {
        push_row(&mut out, (0..m).map(|s| a.act(x, s)));
    }
    out
}

pub fn emit_partition(p: &Partition, labels: Option<&[String]>) -> String {
    let mut out = format!("partition {}\n{p}\n", p.len());
    if let Some(labels) = labels {
        let _ = writeln!(out, "labels {}", labels.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_set_round_trip() {
        let x = CycleSet::from_cycle_rows(&["(14)", "(1342)", "(23)", "(1243)"]).unwrap();
        let text = emit_cycle_set(&x);
        assert_eq!(text.lines().next(), Some("cycleset 4"));
        let sections = parse_document(&text).unwrap();
        assert_eq!(
            sections,
            vec![Section::CycleSet {
                line: 1,
                rows: x.table_rows()
            }]
        );
    }

    #[test]
    fn comments_cycles_and_labels() {
        let text = "# base\ncycleset 1\n(1)\n\ndcocycle 1 2\nlabels a b\n1 2\n2 1\n";
        let sections = parse_document(text).unwrap();
        assert_eq!(sections.len(), 2);
        match &sections[1] {
            Section::DCocycle { line, n, labels, rows } => {
                assert_eq!((*line, *n), (5, 1));
                assert_eq!(labels, &["a", "b"]);
                assert_eq!(rows, &vec![vec![0, 1], vec![1, 0]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_document("cycleset 2\n1 2\n1 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_document("cycleset 2\n1 2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("end of input"));
        let e = parse_document("# nothing\nfoo 3\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: unknown section header `foo 3`");
        assert_eq!(parse_document("").unwrap_err().line, 1);
        let e = parse_document("action 1 2\n(12)\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_document("partition 4\n{1,2}{3}\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn solution_and_partition_sections() {
        let text = "solution 2\n2 1\n2 1\n\n2 1\n2 1\npartition 2\n1 2\nlabels a\n";
        let sections = parse_document(text).unwrap();
        assert_eq!(sections[0].kind(), "solution");
        assert_eq!(
            sections[1],
            Section::Partition {
                line: 7,
                partition: Partition::discrete(2),
                labels: Some(vec!["a".into()])
            }
        );
    }
}
