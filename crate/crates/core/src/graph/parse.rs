//! Line-oriented graph text format.
//!
//! ```text
//! # comment
//! vertex x1 2
//! vertex y1 1
//! edge y1 x1
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{VertexId, WeightedOrientedGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Keep source and sink weights exactly as written.
    pub raw_weights: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: WeightedOrientedGraph,
    pub warnings: Vec<String>,
}

/// Characters reserved by the ideal and cover output formats.
const RESERVED: &[char] = &['*', '^', '#', '{', '}', ',', '(', ')'];

pub(crate) fn validate_name(name: &str) -> std::result::Result<(), String> {
    if name.is_empty() {
        return Err("empty name".into());
    }
    if name.starts_with(|c: char| c.is_ascii_digit()) {
        return Err(format!("name `{name}` must not start with a digit"));
    }
    if let Some(c) = name
        .chars()
        .find(|c| RESERVED.contains(c) || c.is_whitespace() || c.is_control())
    {
        return Err(format!("name `{name}` contains reserved character {c:?}"));
    }
    Ok(())
}

pub fn parse_graph(text: &str, opts: ParseOptions) -> Result<ParsedGraph> {
    let mut names: Vec<String> = Vec::new();
    let mut weights: Vec<u64> = Vec::new();
    let mut index: HashMap<String, VertexId> = HashMap::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            ["vertex", name, weight] => {
                validate_name(name).map_err(err)?;
                let w: u64 = weight
                    .parse()
                    .map_err(|_| err(format!("weight `{weight}` is not a natural number")))?;
                if w == 0 {
                    return Err(err("weights must be at least 1".into()));
                }
                if index.insert(name.to_string(), names.len()).is_some() {
                    return Err(err(format!("vertex `{name}` declared twice")));
                }
                names.push(name.to_string());
                weights.push(w);
            }
            ["edge", from, to] => {
                let u = *index
                    .get(*from)
                    .ok_or_else(|| err(format!("edge uses undeclared vertex `{from}`")))?;
                let v = *index
                    .get(*to)
                    .ok_or_else(|| err(format!("edge uses undeclared vertex `{to}`")))?;
                edges.push((u, v));
                edge_lines.push(line);
            }
            [directive, ..] => {
                return Err(err(format!(
                    "expected `vertex <name> <weight>` or `edge <from> <to>`, found `{directive}` with {} argument(s)",
                    fields.len() - 1
                )));
            }
            [] => unreachable!(),
        }
    }

    // Polarized variables render as `name_j`; a vertex spelled like that would
    // be ambiguous.
    for name in &names {
        if let Some((base, copy)) = name.rsplit_once('_') {
            if !copy.is_empty()
                && copy.bytes().all(|b| b.is_ascii_digit())
                && index.contains_key(base)
            {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("vertex `{name}` collides with a polarized copy of `{base}`"),
                });
            }
        }
    }

    let graph = WeightedOrientedGraph::new(names, weights, edges.iter().copied()).map_err(|e| {
        // Point at the first offending edge line when the graph itself is rejected.
        match e {
            Error::InvalidGraph(message) => Error::Parse {
                line: edge_lines.last().copied().unwrap_or(0),
                message,
            },
            other => other,
        }
    })?;

    let mut warnings = Vec::new();
    let graph = if opts.raw_weights {
        for v in graph.boundary_weight_violations() {
            warnings.push(format!(
                "vertex `{}` is a {} with weight {}; kept because of --raw-weights",
                graph.name(v),
                if graph.is_source(v) { "source" } else { "sink" },
                graph.weight(v)
            ));
        }
        graph
    } else {
        graph.normalize_boundary_weights()
    };
    Ok(ParsedGraph { graph, warnings })
}

pub fn render_graph(g: &WeightedOrientedGraph) -> String {
    let mut out = String::new();
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "vertex {} {}", g.name(v), g.weight(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "edge {} {}", g.name(u), g.name(v));
    }
    out
}
