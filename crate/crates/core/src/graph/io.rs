use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Edge, Grid};
use crate::error::{Error, Result};

/// Index base of an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Indexing {
    ZeroBased,
    OneBased,
    /// One-based when the smallest index is 1 and no 0 appears.
    #[default]
    Auto,
}

/// Parses the whitespace edge-list format.
///
/// One edge per line, `#` starts a comment, and an optional `nodes=<N>` line
/// fixes the node count (otherwise it is the largest index plus one, after
/// shifting to 0-based).
pub fn parse_edge_list(text: &str, indexing: Indexing) -> Result<Grid> {
    let mut raw: Vec<(usize, u64, u64)> = Vec::new();
    let mut declared: Option<(usize, u64)> = None;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(value) = content.strip_prefix("nodes=") {
            if declared.is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "duplicate nodes= header".into(),
                });
            }
            let n = value.trim().parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid node count {value:?}"),
            })?;
            declared = Some((lineno, n));
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two node indices, found {} tokens", tokens.len()),
            });
        }
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid node index {tok:?}"),
            })
        };
        let (a, b) = (parse(tokens[0])?, parse(tokens[1])?);
        if a == b {
            return Err(Error::SelfLoop {
                line: lineno,
                node: a,
            });
        }
        raw.push((lineno, a, b));
    }

    if raw.is_empty() {
        return Err(Error::NoEdges);
    }

    let min = raw.iter().map(|&(_, a, b)| a.min(b)).min().unwrap_or(0);
    let max = raw.iter().map(|&(_, a, b)| a.max(b)).max().unwrap_or(0);
    let one_based = match indexing {
        Indexing::ZeroBased => false,
        Indexing::OneBased => {
            if let Some(&(line, _, _)) = raw.iter().find(|&&(_, a, b)| a == 0 || b == 0) {
                return Err(Error::Parse {
                    line,
                    message: "index 0 in a one-based edge list".into(),
                });
            }
            true
        }
        Indexing::Auto => min == 1,
    };
    let shift = u64::from(one_based);
    let required = (max + 1 - shift) as usize;
    let node_count = match declared {
        Some((line, n)) if (n as usize) < required => {
            return Err(Error::Parse {
                line,
                message: format!("nodes={n} but edges reference {required} nodes"),
            })
        }
        Some((_, n)) => n as usize,
        None => required,
    };

    let edges = raw
        .iter()
        .map(|&(_, a, b)| Edge::new((a - shift) as usize, (b - shift) as usize))
        .collect();
    let labels = one_based.then(|| (1..=node_count as u64).collect());
    Ok(Grid::from_canonical(node_count, edges).with_labels(labels))
}

/// Canonical 0-based edge list with a `nodes=` header.
pub fn to_edge_list(grid: &Grid) -> String {
    let mut out = String::with_capacity(16 * (grid.edge_count() + 1));
    let _ = writeln!(out, "nodes={}", grid.node_count());
    for e in grid.edges() {
        let _ = writeln!(out, "{} {}", e.u, e.v);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    nodes: usize,
    edges: Vec<[usize; 2]>,
}

/// Parses `{"nodes": N, "edges": [[i, j], ...]}` with 0-based indices.
pub fn parse_json(text: &str) -> Result<Grid> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    if doc.edges.is_empty() {
        return Err(Error::NoEdges);
    }
    Grid::new(doc.nodes, doc.edges.into_iter().map(|[a, b]| (a, b)))
}

pub fn to_json(grid: &Grid) -> String {
    let doc = JsonGraph {
        nodes: grid.node_count(),
        edges: grid.edges().iter().map(|&e| e.into()).collect(),
    };
    serde_json::to_string(&doc).expect("graph serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_based_input_is_shifted() {
        let g = parse_edge_list("1 2\n2 3\n", Indexing::OneBased).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(1, 2)]);
        assert_eq!(g.labels(), Some(&[1u64, 2, 3][..]));
    }

    #[test]
    fn auto_detects_base() {
        let one = parse_edge_list("1 2\n2 3\n", Indexing::Auto).unwrap();
        assert_eq!(one.node_count(), 3);
        let zero = parse_edge_list("0 1\n1 2\n", Indexing::Auto).unwrap();
        assert_eq!(zero.node_count(), 3);
        assert!(zero.labels().is_none());
    }

    #[test]
    fn empty_stream_has_no_edges() {
        assert!(matches!(
            parse_edge_list("", Indexing::Auto),
            Err(Error::NoEdges)
        ));
        assert!(matches!(
            parse_edge_list("# only a comment\nnodes=4\n", Indexing::Auto),
            Err(Error::NoEdges)
        ));
    }

    #[test]
    fn malformed_token_reports_line() {
        let err = parse_edge_list("0 1\n1 x\n", Indexing::ZeroBased).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_edge_list("0 1 2\n", Indexing::ZeroBased).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn self_loop_reports_line() {
        let err = parse_edge_list("# header\n0 1\n\n2 2\n", Indexing::ZeroBased).unwrap_err();
        assert!(matches!(err, Error::SelfLoop { line: 4, node: 2 }));
    }

    #[test]
    fn header_and_comments() {
        let g = parse_edge_list("nodes=6 # padded\n0 1 # line\n1 0\n", Indexing::Auto).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 1);
        assert!(parse_edge_list("nodes=2\n0 5\n", Indexing::Auto).is_err());
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(matches!(parse_json("{nodes: 3"), Err(Error::Json(_))));
        assert!(parse_json(r#"{"nodes": 2, "edges": [[0, 2]]}"#).is_err());
    }

    fn arb_grid() -> impl Strategy<Value = Grid> {
        (2usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 1..30).prop_filter_map(
                "needs an edge",
                move |pairs| {
                    let pairs: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
                    (!pairs.is_empty()).then(|| Grid::new(n, pairs).unwrap())
                },
            )
        })
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(g in arb_grid()) {
            let text = to_edge_list(&g);
            let back = parse_edge_list(&text, Indexing::ZeroBased).unwrap();
            prop_assert_eq!(&back, &g);
            let again = parse_json(&to_json(&back)).unwrap();
            prop_assert_eq!(again, g);
        }
    }
}
