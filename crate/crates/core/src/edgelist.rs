//! Plain-text edge lists.
//!
//! One edge per line as two whitespace-separated non-negative integer ids.
//! Lines starting with `#` are comments and blank lines are skipped. A
//! `# nodes: N` comment fixes the node count; without it the count is the
//! largest id plus one.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, NodeId};

fn parse_error(line: usize, message: impl ToString) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_id(tok: &str, line: usize) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| parse_error(line, format!("expected a non-negative integer id, found {tok:?}")))
}

/// Value of a `# nodes: N` header line, if `line` is one.
fn node_header(line: &str) -> Option<&str> {
    line.strip_prefix('#')?.trim().strip_prefix("nodes:").map(str::trim)
}

pub fn parse(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<(u32, u32, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(v) = node_header(line) {
                let n = v
                    .parse::<usize>()
                    .map_err(|_| parse_error(lineno, format!("bad node count {v:?}")))?;
                if declared.is_some() {
                    return Err(parse_error(lineno, "node count declared twice"));
                }
                declared = Some((n, lineno));
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(parse_error(lineno, "expected exactly two ids"));
        };
        edges.push((parse_id(a, lineno)?, parse_id(b, lineno)?, lineno));
    }

    let inferred = edges.iter().map(|&(u, v, _)| u.max(v) as usize + 1).max().unwrap_or(0);
    let n = match declared {
        Some((n, lineno)) if n < inferred => {
            return Err(parse_error(
                lineno,
                format!("declared {n} nodes but ids reach {}", inferred - 1),
            ));
        }
        Some((n, _)) => n,
        None => inferred,
    };
    let mut b = GraphBuilder::new(n);
    for (u, v, lineno) in edges {
        b.add_edge(NodeId(u), NodeId(v)).map_err(|e| parse_error(lineno, e))?;
    }
    Ok(b.build())
}

/// Writes a `# nodes: N` header and then every edge as `u v`, smaller id
/// first, in lexicographic order.
pub fn write<W: fmt::Write>(g: &Graph, out: &mut W) -> fmt::Result {
    writeln!(out, "# nodes: {}", g.node_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
