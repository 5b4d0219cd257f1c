//! Plain-text rooted graph format.
//!
//! ```text
//! # comment
//! 3 0        <- vertex count, root (-1 when unrooted)
//! 0 1        <- one edge per line, 0-based
//! 1 2
//! ```

use std::fmt::{self, Write as _};

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    MalformedLine(String),
    IndexOutOfRange { vertex: usize, vertex_count: usize },
    DuplicateEdge(usize, usize),
    SelfLoop(usize),
    RootOutOfRange(i64),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing header line \"n root\""),
            ParseErrorKind::MalformedLine(why) => write!(f, "malformed line: {why}"),
            ParseErrorKind::IndexOutOfRange {
                vertex,
                vertex_count,
            } => write!(f, "vertex {vertex} out of range (n = {vertex_count})"),
            ParseErrorKind::DuplicateEdge(u, v) => write!(f, "duplicate edge {u}-{v}"),
            ParseErrorKind::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            ParseErrorKind::RootOutOfRange(r) => write!(f, "root {r} out of range"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Parses the text format. Returns the graph and its root, if any.
pub fn parse_graph(text: &str) -> Result<(Graph, Option<usize>), ParseError> {
    let mut header: Option<(usize, Option<usize>)> = None;
    let mut graph = Graph::new(0);

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<(usize, &str)> = fields_with_columns(content);
        if fields.is_empty() {
            continue;
        }
        let err = |column: usize, kind| ParseError {
            line: line_no,
            column,
            kind,
        };
        if fields.len() != 2 {
            return Err(err(
                fields[0].0,
                ParseErrorKind::MalformedLine(format!("expected 2 fields, found {}", fields.len())),
            ));
        }
        match header {
            None => {
                let n: usize = fields[0].1.parse().map_err(|_| {
                    err(
                        fields[0].0,
                        ParseErrorKind::MalformedLine(format!(
                            "bad vertex count {:?}",
                            fields[0].1
                        )),
                    )
                })?;
                let root: i64 = fields[1].1.parse().map_err(|_| {
                    err(
                        fields[1].0,
                        ParseErrorKind::MalformedLine(format!("bad root {:?}", fields[1].1)),
                    )
                })?;
                let root = match root {
                    -1 => None,
                    r if r >= 0 && (r as usize) < n => Some(r as usize),
                    r => return Err(err(fields[1].0, ParseErrorKind::RootOutOfRange(r))),
                };
                graph = Graph::new(n);
                header = Some((n, root));
            }
            Some((n, _)) => {
                let mut ends = [0usize; 2];
                for (slot, &(column, token)) in ends.iter_mut().zip(&fields) {
                    *slot = token.parse().map_err(|_| {
                        err(
                            column,
                            ParseErrorKind::MalformedLine(format!("bad vertex index {token:?}")),
                        )
                    })?;
                }
                graph.add_edge(ends[0], ends[1]).map_err(|e| {
                    let column = match e {
                        GraphError::IndexOutOfRange { vertex, .. } if vertex == ends[0] => {
                            fields[0].0
                        }
                        GraphError::IndexOutOfRange { .. } => fields[1].0,
                        _ => fields[0].0,
                    };
                    let kind = match e {
                        GraphError::IndexOutOfRange { vertex, .. } => {
                            ParseErrorKind::IndexOutOfRange {
                                vertex,
                                vertex_count: n,
                            }
                        }
                        GraphError::SelfLoop(v) => ParseErrorKind::SelfLoop(v),
                        GraphError::DuplicateEdge(u, v) => ParseErrorKind::DuplicateEdge(u, v),
                        other => ParseErrorKind::MalformedLine(other.to_string()),
                    };
                    err(column, kind)
                })?;
            }
        }
    }
    let (_, root) = header.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    Ok((graph, root))
}

fn fields_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Normalized text: header, then edges `u v` with `u < v` in sorted order.
pub fn render_graph(graph: &Graph, root: Option<usize>) -> String {
    let mut out = String::new();
    let root = root.map_or(-1, |r| r as i64);
    writeln!(out, "{} {}", graph.vertex_count(), root).unwrap();
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Graphviz export; the root is drawn as a double circle.
pub fn render_dot(graph: &Graph, root: Option<usize>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..graph.vertex_count() {
        if Some(v) == root {
            writeln!(out, "  {v} [shape=doublecircle];").unwrap();
        } else {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rooted_path() {
        let (g, root) = parse_graph("3 0\n0 1\n1 2").unwrap();
        assert_eq!(root, Some(0));
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn comments_blank_lines_and_unrooted() {
        let (g, root) = parse_graph("# header\n\n4 -1  # unrooted\n2 3\n\n0 1 # edge\n").unwrap();
        assert_eq!(root, None);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn render_normalizes() {
        let (g, root) = parse_graph("4 2\n3 2\n1 0\n# tail\n").unwrap();
        assert_eq!(render_graph(&g, root), "4 2\n0 1\n2 3\n");
    }

    #[test]
    fn each_error_is_distinct() {
        let kind = |t: &str| parse_graph(t).unwrap_err().kind;
        assert_eq!(kind("2 0\n0 0"), ParseErrorKind::SelfLoop(0));
        assert_eq!(kind("2 0\n0 1\n1 0"), ParseErrorKind::DuplicateEdge(0, 1));
        assert_eq!(
            kind("2 0\n0 5"),
            ParseErrorKind::IndexOutOfRange {
                vertex: 5,
                vertex_count: 2
            }
        );
        assert!(matches!(
            kind("2 0\n0 1 2"),
            ParseErrorKind::MalformedLine(_)
        ));
        assert!(matches!(kind("2 0\n0 x"), ParseErrorKind::MalformedLine(_)));
        assert_eq!(kind("# nothing"), ParseErrorKind::MissingHeader);
        assert_eq!(kind("2 7"), ParseErrorKind::RootOutOfRange(7));
    }

    #[test]
    fn error_positions() {
        let e = parse_graph("3 0\n0 1\n1   9\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));
    }

    #[test]
    fn dot_marks_root() {
        let dot = render_dot(&Graph::path(2), Some(1));
        assert!(dot.contains("1 [shape=doublecircle]"));
        assert!(dot.contains("0 -- 1"));
    }
}
