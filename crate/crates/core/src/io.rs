//! Plain-text graph files.
//!
//! ```text
//! # comment
//! fuzzygraph 1
//! vertices 3
//! v 0 1
//! v 1 1
//! v 2 1
//! edges 2
//! e 0 1 0.8
//! e 1 2 0.6
//! ```
//!
//! The serializer is canonical: vertices ascending, edges sorted by `(u, v)`
//! with `u < v`, decimals rounded to nine fractional digits with trailing
//! zeros dropped. Output of the serializer is a fixpoint of
//! parse-then-serialize.

use std::fmt::Write as _;

use crate::error::{GraphError, ParseError};
use crate::graph::FuzzyGraph;

pub const FORMAT_VERSION: u32 = 1;

/// Renders `x` with at most nine fractional digits and no trailing zeros.
pub fn format_decimal(x: f64) -> String {
    let mut s = format!("{x:.9}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn serialize_graph(g: &FuzzyGraph) -> String {
    let mut out = String::new();
    writeln!(out, "fuzzygraph {FORMAT_VERSION}").unwrap();
    writeln!(out, "vertices {}", g.n()).unwrap();
    for v in 0..g.n() {
        writeln!(out, "v {v} {}", format_decimal(g.nu(v))).unwrap();
    }
    let edges: Vec<_> = g
        .edges()
        .map(|(u, v, w)| (u, v, format_decimal(w)))
        .filter(|(_, _, w)| w != "0")
        .collect();
    writeln!(out, "edges {}", edges.len()).unwrap();
    for (u, v, w) in edges {
        writeln!(out, "e {u} {v} {w}").unwrap();
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank, non-comment line with its 1-based number.
    fn next_record(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((i + 1, line.split_whitespace().collect()));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.next_record()
            .ok_or_else(|| ParseError::Truncated(format!("expected {what}")))
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

fn keyword_count(line: usize, rec: &[&str], key: &str) -> Result<usize, ParseError> {
    match rec {
        [k, count] if *k == key => number(line, count, &format!("{key} count")),
        _ => Err(syntax(line, format!("expected `{key} <count>`"))),
    }
}

/// Parses and validates a graph file.
pub fn parse_graph(text: &str) -> Result<FuzzyGraph, ParseError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };

    let (ln, rec) = lines.expect("header `fuzzygraph 1`")?;
    match rec.as_slice() {
        ["fuzzygraph", ver] => {
            let ver: u32 = number(ln, ver, "format version")?;
            if ver != FORMAT_VERSION {
                return Err(syntax(ln, format!("unsupported format version {ver}")));
            }
        }
        _ => return Err(syntax(ln, "expected header `fuzzygraph 1`")),
    }

    let (ln, rec) = lines.expect("`vertices <n>`")?;
    let n = keyword_count(ln, &rec, "vertices")?;
    let mut nu = Vec::with_capacity(n);
    for expected in 0..n {
        let (ln, rec) = lines.expect("vertex record")?;
        let (id, value) = match rec.as_slice() {
            ["v", id, value] => (
                number::<usize>(ln, id, "vertex id")?,
                number::<f64>(ln, value, "vertex membership")?,
            ),
            _ => return Err(syntax(ln, "expected `v <id> <nu>`")),
        };
        if id != expected {
            return Err(ParseError::Validation {
                line: ln,
                error: GraphError::invalid(
                    "vertices",
                    format!("vertex {id} out of sequence, expected {expected}"),
                ),
            });
        }
        if !(0.0..=1.0).contains(&value) {
            return Err(ParseError::Validation {
                line: ln,
                error: GraphError::VertexMembership { vertex: id, value },
            });
        }
        nu.push(value);
    }

    let (ln, rec) = lines.expect("`edges <m>`")?;
    let m = keyword_count(ln, &rec, "edges")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashMap::with_capacity(m);
    for _ in 0..m {
        let (ln, rec) = lines.expect("edge record")?;
        let (a, b, w) = match rec.as_slice() {
            ["e", a, b, w] => (
                number::<usize>(ln, a, "vertex id")?,
                number::<usize>(ln, b, "vertex id")?,
                number::<f64>(ln, w, "edge membership")?,
            ),
            _ => return Err(syntax(ln, "expected `e <u> <v> <mu>`")),
        };
        let invalid = |error| ParseError::Validation { line: ln, error };
        for x in [a, b] {
            if x >= n {
                return Err(invalid(GraphError::VertexOutOfRange { vertex: x, n }));
            }
        }
        if a == b {
            return Err(invalid(GraphError::SelfLoop {
                vertex: a,
                value: w,
            }));
        }
        let (u, v) = (a.min(b), a.max(b));
        if let Some(&(prev_line, prev)) = seen.get(&(u, v)) {
            let error = if prev != w {
                GraphError::Asymmetric {
                    u: a,
                    v: b,
                    forward: prev,
                    backward: w,
                }
            } else {
                GraphError::invalid("edges", format!("edge ({u}, {v}) repeats line {prev_line}"))
            };
            return Err(invalid(error));
        }
        let bound = nu[u].min(nu[v]);
        if !(0.0..=bound).contains(&w) {
            return Err(invalid(GraphError::EdgeMembership {
                u,
                v,
                value: w,
                bound,
            }));
        }
        seen.insert((u, v), (ln, w));
        edges.push((u, v, w));
    }

    if let Some((ln, _)) = lines.next_record() {
        return Err(syntax(ln, "unexpected content after the last edge"));
    }

    FuzzyGraph::from_edges(nu, &edges).map_err(|error| ParseError::Validation { line: 0, error })
}
