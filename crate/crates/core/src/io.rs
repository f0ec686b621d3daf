//! Vote files, weight specifications and run reports.
//!
//! Vote files are UTF-8 text holding positive integers separated by commas
//! and/or whitespace; everything after `#` on a line is ignored. Two layouts
//! are understood:
//!
//! * `rows`: one vote per line, best rank first;
//! * `matrix`: line `r` lists the candidates placed at rank `r`, one column
//!   per vote.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::aggregate::AggregationResult;
use crate::distance::WeightVector;
use crate::error::{Error, Result};
use crate::permutation::{Ranking, VoteProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    #[default]
    Rows,
    Matrix,
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rows" | "rows=votes" => Ok(Layout::Rows),
            "matrix" => Ok(Layout::Matrix),
            other => Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("unknown layout `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    value: usize,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(input: &str) -> Result<Vec<Vec<Cell>>> {
    let mut rows = Vec::new();
    for (ln, raw) in input.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut start = None;
        let bytes = text
            .char_indices()
            .chain(std::iter::once((text.len(), ' ')));
        for (i, ch) in bytes {
            let sep = ch == ',' || ch.is_whitespace();
            match (start, sep) {
                (None, false) => start = Some(i),
                (Some(s), true) => {
                    let tok = &text[s..i];
                    let column = text[..s].chars().count() + 1;
                    let value = tok.parse::<usize>().map_err(|_| {
                        parse_error(ln + 1, column, format!("`{tok}` is not a positive integer"))
                    })?;
                    row.push(Cell {
                        value,
                        line: ln + 1,
                        column,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptyProfile);
    }
    Ok(rows)
}

fn check_vote(cells: &[Cell], n: usize) -> Result<Ranking> {
    let mut seen = vec![false; n];
    for c in cells {
        if c.value == 0 || c.value > n {
            return Err(parse_error(
                c.line,
                c.column,
                format!("candidate {} outside 1..={n}", c.value),
            ));
        }
        if std::mem::replace(&mut seen[c.value - 1], true) {
            return Err(parse_error(
                c.line,
                c.column,
                format!("duplicate candidate {}", c.value),
            ));
        }
    }
    Ranking::new(cells.iter().map(|c| c.value).collect())
}

/// Reads a vote profile; every vote must be a permutation of `1..=n`.
pub fn parse_votes(input: &str, layout: Layout) -> Result<VoteProfile> {
    let rows = tokenize(input)?;
    let width = rows[0].len();
    for row in &rows {
        if row.len() != width {
            let last = row.last().expect("rows are non-empty");
            return Err(parse_error(
                last.line,
                last.column,
                format!("ragged row: {} entries, expected {width}", row.len()),
            ));
        }
    }
    let votes = match layout {
        Layout::Rows => rows
            .iter()
            .map(|row| check_vote(row, width))
            .collect::<Result<Vec<_>>>()?,
        Layout::Matrix => {
            let n = rows.len();
            (0..width)
                .map(|col| {
                    let cells: Vec<Cell> = rows.iter().map(|row| row[col]).collect();
                    check_vote(&cells, n)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    VoteProfile::new(votes)
}

/// Writes a profile in the given layout; `parse_votes` reads it back unchanged.
pub fn serialize_votes(profile: &VoteProfile, layout: Layout) -> String {
    let mut out = String::new();
    match layout {
        Layout::Rows => {
            for v in profile {
                let line: Vec<String> = v.seq().iter().map(usize::to_string).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
        }
        Layout::Matrix => {
            for r in 1..=profile.n() {
                let line: Vec<String> = profile
                    .iter()
                    .map(|v| v.candidate_at(r).to_string())
                    .collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

/// A compact description of a weight vector.
///
/// Textual forms: `uniform`, `arithmetic`, `geometric:C`, `topk:K`, or an
/// explicit comma-separated list such as `1,1,0,0`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    Explicit(Vec<f64>),
    /// `w_i = 1`.
    Uniform,
    /// `w_i = n − i`.
    Arithmetic,
    /// `w_i = c^(i−1)`, so `w_1 = 1`. Scaling by `c` would not change any
    /// aggregate.
    Geometric(f64),
    /// `w_k = 1`, all others 0: only membership in the top `k` matters.
    TopK(usize),
}

impl FromStr for WeightSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidWeights(msg);
        let s = s.trim();
        let (head, arg) = match s.split_once([':', '=']) {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("uniform", None) => Ok(WeightSpec::Uniform),
            ("arithmetic", None) => Ok(WeightSpec::Arithmetic),
            ("geometric", Some(c)) => c
                .parse()
                .map(WeightSpec::Geometric)
                .map_err(|_| bad(format!("bad geometric ratio `{c}`"))),
            ("topk", Some(k)) => k
                .parse()
                .map(WeightSpec::TopK)
                .map_err(|_| bad(format!("bad top-k size `{k}`"))),
            _ => s
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| bad(format!("bad weight `{t}`")))
                })
                .collect::<Result<Vec<_>>>()
                .and_then(|w| {
                    if w.is_empty() {
                        Err(bad("empty weight list".into()))
                    } else {
                        Ok(WeightSpec::Explicit(w))
                    }
                }),
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Explicit(w) => {
                let parts: Vec<String> = w.iter().map(f64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
            WeightSpec::Uniform => write!(f, "uniform"),
            WeightSpec::Arithmetic => write!(f, "arithmetic"),
            WeightSpec::Geometric(c) => write!(f, "geometric:{c}"),
            WeightSpec::TopK(k) => write!(f, "topk:{k}"),
        }
    }
}

/// Materializes a weight spec for `n` candidates.
pub fn expand_weights(spec: &WeightSpec, n: usize) -> Result<WeightVector> {
    if n == 0 {
        return Err(Error::InvalidSize(0));
    }
    let len = n - 1;
    let w = match spec {
        WeightSpec::Explicit(w) => {
            if w.len() != len {
                return Err(Error::InvalidWeights(format!(
                    "expected {len} weights for n = {n}, got {}",
                    w.len()
                )));
            }
            w.clone()
        }
        WeightSpec::Uniform => vec![1.0; len],
        WeightSpec::Arithmetic => (1..n).map(|i| (n - i) as f64).collect(),
        WeightSpec::Geometric(c) => {
            if !(0.0..1.0).contains(c) {
                return Err(Error::InvalidWeights(format!(
                    "geometric ratio must satisfy 0 <= c < 1, got {c}"
                )));
            }
            (0..len).map(|i| c.powi(i as i32)).collect()
        }
        WeightSpec::TopK(k) => {
            if *k == 0 || *k >= n {
                return Err(Error::InvalidWeights(format!(
                    "top-k size must satisfy 1 <= k < {n}, got {k}"
                )));
            }
            (1..n).map(|i| if i == *k { 1.0 } else { 0.0 }).collect()
        }
    };
    WeightVector::new(w)
}

/// Everything one CLI invocation computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub weights: Vec<f64>,
    pub space: crate::distance::Space,
    pub results: Vec<AggregationResult>,
}

impl RunReport {
    pub fn render_table(&self) -> String {
        let mut rows: Vec<[String; 4]> = vec![[
            "method".into(),
            "ranking".into(),
            "average".into(),
            "cumulative".into(),
        ]];
        for r in &self.results {
            let flag = if r.exact { "" } else { " (bound)" };
            rows.push([
                r.method.clone(),
                r.ranking.to_string(),
                format!("{:.4}{flag}", r.average),
                format!("{:.4}", r.cumulative),
            ]);
        }
        let widths: Vec<usize> = (0..4)
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = format!("n = {}, m = {}, w = {:?}\n", self.n, self.m, self.weights);
        for row in rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}
