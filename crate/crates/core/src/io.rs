//! File formats.
//!
//! Hypergraph text format (`.hg`): first non-comment line `n m`, then m
//! lines `a b c` with 0 <= a < b < c < n; `#` starts a comment. A JSON
//! alternative `{"n": int, "edges": [[a,b,c], ...]}` is accepted on input.
//!
//! Metric format (`.fm`): first line `n`, then n(n-1)/2 lines `i j p/q`
//! with i < j. Distances are exact rationals; decimal input such as `1.5`
//! is converted exactly.

use serde::Deserialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError, Triple};
use crate::metric::{format_rat, parse_rat, FiniteMetric, MetricError, Rat};

#[derive(Error, Debug)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid hypergraph: {0}")]
    Hypergraph(#[from] HypergraphError),
    #[error("invalid metric: {0}")]
    Metric(#[from] MetricError),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

#[derive(Deserialize)]
struct HgJson {
    n: usize,
    edges: Vec<[usize; 3]>,
}

/// Parses the `.hg` text format, or the JSON alternative when the input
/// starts with `{`.
pub fn parse_hg(input: &str) -> Result<Hypergraph, IoError> {
    if input.trim_start().starts_with('{') {
        let parsed: HgJson = serde_json::from_str(input)
            .map_err(|e| parse_err(e.line(), format!("bad JSON hypergraph: {e}")))?;
        let triples: Result<Vec<_>, _> = parsed
            .edges
            .iter()
            .map(|[a, b, c]| Triple::new(*a, *b, *c))
            .collect();
        return Ok(Hypergraph::new(parsed.n, triples?)?);
    }

    let mut lines = content_lines(input);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty input, expected header 'n m'"))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line_no, "expected vertex count"))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line_no, "expected edge count"))?;
    if it.next().is_some() {
        return Err(parse_err(line_no, "trailing tokens after 'n m' header"));
    }
    let mut triples = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {m} edge lines")))?;
        let vs: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| parse_err(line_no, format!("bad edge line '{line}'")))?;
        if vs.len() != 3 {
            return Err(parse_err(line_no, "edge lines must hold three vertex ids"));
        }
        if !(vs[0] < vs[1] && vs[1] < vs[2]) {
            return Err(parse_err(line_no, "edge vertices must satisfy a < b < c"));
        }
        triples.push(Triple::new(vs[0], vs[1], vs[2]).map_err(|e| {
            parse_err(line_no, e.to_string())
        })?);
    }
    if let Some((line_no, line)) = lines.next() {
        return Err(parse_err(line_no, format!("unexpected trailing line '{line}'")));
    }
    Ok(Hypergraph::new(n, triples)?)
}

pub fn write_hg(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.edge_count());
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        out.push_str(&format!("{a} {b} {c}\n"));
    }
    out
}

/// Parses the `.fm` metric format; the result is fully validated.
pub fn parse_fm(input: &str) -> Result<FiniteMetric, IoError> {
    let mut lines = content_lines(input);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty input, expected point count"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| parse_err(line_no, "expected point count"))?;
    let expected = n * (n - 1) / 2;
    let mut entries: Vec<Option<Rat>> = vec![None; expected];
    for _ in 0..expected {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {expected} distance lines")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(line_no, "distance lines must read 'i j value'"));
        }
        let i: usize = toks[0]
            .parse()
            .map_err(|_| parse_err(line_no, "bad point id"))?;
        let j: usize = toks[1]
            .parse()
            .map_err(|_| parse_err(line_no, "bad point id"))?;
        if !(i < j && j < n) {
            return Err(parse_err(line_no, "distance lines need i < j < n"));
        }
        let v = parse_rat(toks[2]).map_err(|e| parse_err(line_no, e))?;
        let slot = &mut entries[crate::metric::pair_index(i, j)];
        if slot.is_some() {
            return Err(parse_err(line_no, format!("pair ({i}, {j}) given twice")));
        }
        *slot = Some(v);
    }
    if let Some((line_no, line)) = lines.next() {
        return Err(parse_err(line_no, format!("unexpected trailing line '{line}'")));
    }
    let d: Vec<Rat> = entries
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| parse_err(0, "missing distance lines"))?;
    Ok(FiniteMetric::from_upper(n, d)?)
}

pub fn write_fm(m: &FiniteMetric) -> String {
    let mut out = format!("{}\n", m.n());
    for (i, j) in crate::metric::pairs(m.n()) {
        out.push_str(&format!("{i} {j} {}\n", format_rat(&m.dist(i, j))));
    }
    out
}

fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::rat_int;

    #[test]
    fn hg_roundtrip() {
        let h = crate::generators::fano();
        let text = write_hg(&h);
        assert_eq!(parse_hg(&text).unwrap(), h);
    }

    #[test]
    fn hg_accepts_comments_and_json() {
        let h = parse_hg("# a comment\n4 1 # header\n0 1 2\n").unwrap();
        assert_eq!(h.n(), 4);
        let j = parse_hg(r#"{"n": 4, "edges": [[0, 1, 2]]}"#).unwrap();
        assert_eq!(j, h);
    }

    #[test]
    fn hg_rejects_bad_input_with_line_numbers() {
        let err = parse_hg("3 1\n0 1 3\n").unwrap_err();
        assert!(matches!(err, IoError::Hypergraph(_)), "{err}");
        let err = parse_hg("4 2\n0 1 2\n0 2 1\n").unwrap_err();
        match err {
            IoError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
        let err = parse_hg("4 2\n0 1 2\n0 1 2\n").unwrap_err();
        assert!(matches!(err, IoError::Hypergraph(HypergraphError::DuplicateTriple(_))));
    }

    #[test]
    fn fm_roundtrip_and_decimals() {
        let m = FiniteMetric::line(&[rat_int(0), rat_int(1), rat_int(2)]);
        let text = write_fm(&m);
        assert_eq!(parse_fm(&text).unwrap(), m);

        let m = parse_fm("3\n0 1 1.5\n0 2 1.5\n1 2 1.5\n").unwrap();
        assert_eq!(m.dist(0, 1), crate::metric::rat(3, 2));
    }

    #[test]
    fn fm_rejects_violations() {
        let err = parse_fm("3\n0 1 1\n0 2 3\n1 2 1\n").unwrap_err();
        assert!(matches!(err, IoError::Metric(MetricError::TriangleViolation { .. })));
    }
}
