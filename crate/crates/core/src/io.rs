//! Text document format for hypergraphs.
//!
//! ```text
//! # optional comment lines start with '#'
//! p <v> <m>
//! <edge 1: strictly increasing 0-based vertex indices, single spaces>
//! ...
//! <edge m>
//! ```
//!
//! Lines end in `\n` with no trailing whitespace. [`serialize`] writes edges
//! in canonical order (size, then lexicographic) and no comments, so
//! `parse(serialize(h)) == h` and equal hypergraphs serialize to equal bytes.
//! Documents with repeated edge lines are rejected rather than collapsed.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_number(line: usize, token: &str, what: &str) -> Result<usize> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(
            line,
            format!("expected {what}, found `{token}`"),
        ));
    }
    token
        .parse()
        .map_err(|_| parse_error(line, format!("{what} `{token}` is too large")))
}

pub fn parse(document: &str) -> Result<Hypergraph> {
    let body = document.strip_suffix('\n').unwrap_or(document);
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();

    for (i, raw) in body.split('\n').enumerate() {
        let line = i + 1;
        if raw.starts_with('#') {
            continue;
        }
        if raw.ends_with(|c: char| c.is_whitespace())
            || raw.starts_with(|c: char| c.is_whitespace())
        {
            return Err(parse_error(line, "leading or trailing whitespace"));
        }
        let tokens: Vec<&str> = raw.split(' ').collect();
        let Some((v, m)) = header else {
            if tokens.len() != 3 || tokens[0] != "p" {
                return Err(parse_error(line, "expected header `p <v> <m>`"));
            }
            header = Some((
                parse_number(line, tokens[1], "vertex count")?,
                parse_number(line, tokens[2], "edge count")?,
            ));
            continue;
        };
        if raw.is_empty() {
            return Err(parse_error(line, "empty line"));
        }
        let members = tokens
            .iter()
            .map(|t| parse_number(line, t, "vertex index"))
            .collect::<Result<Vec<_>>>()?;
        if members.len() < 2 {
            return Err(parse_error(line, "edge needs at least 2 vertices"));
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_error(
                line,
                "edge vertices must be strictly increasing",
            ));
        }
        if let Some(&x) = members.iter().find(|&&x| x >= v) {
            return Err(parse_error(
                line,
                format!("vertex {x} out of range for {v} vertices"),
            ));
        }
        if edges.len() == m {
            return Err(parse_error(
                line,
                format!("more than the declared {m} edges"),
            ));
        }
        let edge = Edge::new(members).map_err(|e| parse_error(line, e.to_string()))?;
        if !seen.insert(edge.clone()) {
            return Err(parse_error(line, format!("duplicate edge {edge}")));
        }
        edges.push(edge);
    }

    let Some((v, m)) = header else {
        return Err(parse_error(1, "missing header `p <v> <m>`"));
    };
    if edges.len() != m {
        return Err(parse_error(
            body.split('\n').count(),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Hypergraph::from_edges(v, edges)
}

pub fn serialize(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", h.vertex_count(), h.edge_count()).expect("writing to a String");
    for e in h.edges() {
        for (i, x) in e.members().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{x}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use proptest::prelude::*;

    #[test]
    fn parses_triangle() {
        let h = parse("p 3 3\n0 1\n0 2\n1 2\n").unwrap();
        assert_eq!(h, constructions::triangle());
        assert_eq!(serialize(&h), "p 3 3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn comments_and_order() {
        let h = parse("# tri\np 3 3\n1 2\n# mid\n0 1\n0 2").unwrap();
        assert_eq!(h, constructions::triangle());
        assert_eq!(parse("p 4 0\n").unwrap(), Hypergraph::empty(4));
    }

    #[test]
    fn rejects_malformed_documents() {
        let cases = [
            ("p 2 1\n0 0\n", "strictly increasing"),
            ("p 2 1\n1 0\n", "strictly increasing"),
            ("q 2 1\n0 1\n", "header"),
            ("p 2\n0 1\n", "header"),
            ("p 2 1\n0 2\n", "out of range"),
            ("p 3 1\n0\n", "at least 2"),
            ("p 3 2\n0 1\n0 1\n", "duplicate"),
            ("p 3 2\n0 1\n", "declares 2"),
            ("p 3 1\n0 1\n1 2\n", "more than"),
            ("p 3 1\n0 1 \n", "whitespace"),
            ("p 3 1\n0  1\n", "vertex index"),
            ("p 3 1\n0 x\n", "vertex index"),
            ("p 3 1\n\n0 1\n", "empty line"),
            ("", "header"),
            ("# only a comment\n", "missing header"),
        ];
        for (doc, needle) in cases {
            let err = parse(doc).expect_err(doc).to_string();
            assert!(err.contains(needle), "{doc:?}: {err}");
        }
    }

    #[test]
    fn paper_example_document() {
        let text = serialize(&constructions::paper_example());
        assert_eq!(text.lines().count(), 81);
        assert!(text.starts_with("p 16 80\n"));
        assert_eq!(text, serialize(&constructions::paper_example()));
    }

    fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (2usize..20).prop_flat_map(|v| {
            proptest::collection::vec(proptest::collection::btree_set(0..v, 2..=v), 0..25)
                .prop_map(move |edges| Hypergraph::new(v, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn round_trip(h in arb_hypergraph()) {
            let text = serialize(&h);
            prop_assert_eq!(parse(&text).unwrap(), h);
            prop_assert!(text.lines().all(|l| !l.ends_with(' ')));
        }
    }
}
