//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n m
//! u v
//! ...
//! ```
//!
//! The header gives the vertex count and the number of arc lines that
//! follow. `#` starts a comment anywhere on a line; blank lines are skipped.
//! Serialization writes arcs ordered by tail, then head.

use std::fmt::Write;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_pair(line_no: usize, text: &str, what: &str) -> Result<(usize, usize)> {
    let mut fields = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let f = fields
            .next()
            .ok_or_else(|| parse_err(line_no, format!("{what}: expected two integers")))?;
        f.parse().map_err(|_| {
            parse_err(
                line_no,
                format!("{what}: `{f}` is not a nonnegative integer"),
            )
        })
    };
    let a = next()?;
    let b = next()?;
    if fields.next().is_some() {
        return Err(parse_err(line_no, format!("{what}: trailing fields")));
    }
    Ok((a, b))
}

pub fn parse_edgelist(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let (n, m) = parse_pair(header_line, header, "malformed header")?;

    let mut arcs = Vec::with_capacity(m);
    let mut out = vec![crate::bitset::VertexSet::new(n); n];
    for (line_no, line) in lines {
        if arcs.len() == m {
            return Err(parse_err(
                line_no,
                format!("more than the {m} arcs declared in the header"),
            ));
        }
        let (u, v) = parse_pair(line_no, line, "malformed arc")?;
        for x in [u, v] {
            if x >= n {
                return Err(parse_err(
                    line_no,
                    format!("endpoint {x} out of range 0..{n}"),
                ));
            }
        }
        if !out[u].insert(v) {
            return Err(parse_err(line_no, format!("duplicate arc {u} {v}")));
        }
        arcs.push((u, v));
    }
    if arcs.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("header declares {m} arcs but {} were given", arcs.len()),
        ));
    }
    Digraph::new(n, arcs)
}

pub fn serialize_edgelist(d: &Digraph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", d.order(), d.arc_count()).unwrap();
    for (u, v) in d.arcs() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}
