//! Plain-text rendering of vertex sets, covers and classification reports.

use std::fmt::Write as _;

use edgeideal::classify::{ClassificationReport, OracleCheck};
use edgeideal::covers::{CoverPartition, DualOrdering, QuotientWitness};
use edgeideal::graph::{VertexId, WeightedOrientedGraph};
use serde::Serialize;

/// Names of `set`, sorted as strings.
pub fn names(d: &WeightedOrientedGraph, set: &[VertexId]) -> Vec<String> {
    let mut v: Vec<String> = set.iter().map(|&x| d.name(x).to_string()).collect();
    v.sort();
    v
}

/// `{a, b, c}` with the names sorted.
pub fn braces<S: AsRef<str>>(names: &[S]) -> String {
    let mut v: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
    v.sort_unstable();
    format!("{{{}}}", v.join(", "))
}

pub fn vertex_set(d: &WeightedOrientedGraph, set: &[VertexId]) -> String {
    braces(&names(d, set))
}

/// A cover partition with vertex names instead of indices.
#[derive(Serialize)]
pub struct NamedCover {
    pub cover: Vec<String>,
    pub l1: Vec<String>,
    pub l2: Vec<String>,
    pub l3: Vec<String>,
    pub minimal: bool,
    pub strong: bool,
    pub certificates: Vec<(String, String)>,
}

impl NamedCover {
    pub fn new(d: &WeightedOrientedGraph, c: &CoverPartition) -> Self {
        NamedCover {
            cover: names(d, &c.cover),
            l1: names(d, &c.l1),
            l2: names(d, &c.l2),
            l3: names(d, &c.l3),
            minimal: c.minimal,
            strong: c.strong,
            certificates: c
                .certificates
                .iter()
                .map(|&(y, x)| (d.name(y).to_string(), d.name(x).to_string()))
                .collect(),
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{} L1 {} L2 {} L3 {}",
            braces(&self.cover),
            braces(&self.l1),
            braces(&self.l2),
            braces(&self.l3)
        );
        if self.minimal {
            s.push_str(" minimal");
        }
        for (y, x) in &self.certificates {
            let _ = write!(s, " certified by ({y}, {x})");
        }
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn oracle_lines(o: &OracleCheck) -> String {
    let mut s = format!(
        "oracle over {}: cohen-macaulay {}, sequentially cohen-macaulay {}, unmixed {}",
        o.field,
        yes_no(o.cm),
        yes_no(o.sequentially_cm),
        yes_no(o.unmixed)
    );
    if let Some(d) = &o.depth {
        let _ = write!(s, ", depth {} of dimension {}", d.depth, d.dim);
    }
    s.push('\n');
    s
}

pub fn dual_lines(dual: &DualOrdering) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "dual ordering: {} generators, pure {}, linear quotients {}",
        dual.generators.len(),
        yes_no(dual.pure),
        yes_no(dual.check.linear)
    );
    for (t, g) in dual.generators.iter().enumerate() {
        let m = edgeideal::ideal::render_monomial(g, &dual.registry);
        let colon = match t.checked_sub(1).and_then(|i| dual.check.witnesses.get(i)) {
            None => String::new(),
            Some(QuotientWitness::Linear(vars)) => {
                let v: Vec<&str> = vars
                    .iter()
                    .map(|&v| dual.registry[v as usize].as_str())
                    .collect();
                format!("  colon ({})", v.join(", "))
            }
            Some(QuotientWitness::NotLinear(q)) => format!(
                "  colon has non-variable generator {}",
                edgeideal::ideal::render_monomial(q, &dual.registry)
            ),
        };
        let _ = writeln!(s, "  {:>3}. {m}{colon}", t + 1);
    }
    s
}

pub fn report_lines(rep: &ClassificationReport, show_dual: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph class: {}", rep.graph_class.label());
    if !rep.matching.is_empty() {
        let pairs: Vec<String> = rep
            .matching
            .iter()
            .map(|(x, y)| format!("({x}, {y})"))
            .collect();
        let _ = writeln!(s, "matching: {}", pairs.join(" "));
    }
    for c in &rep.conditions {
        let _ = write!(s, "condition {}: {}", c.label, c.status.label());
        if let Some(w) = &c.witness {
            let _ = write!(s, " ({w})");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "cohen-macaulay: {}", rep.verdict_cm.label());
    let _ = writeln!(s, "unmixed: {}", rep.verdict_unmixed.label());
    let _ = writeln!(
        s,
        "sequentially cohen-macaulay: {}",
        rep.verdict_scm.label()
    );
    if show_dual {
        if let Some(d) = &rep.dual {
            s.push_str(&dual_lines(d));
        }
    }
    if let Some(o) = &rep.oracle {
        s.push_str(&oracle_lines(o));
        let _ = writeln!(s, "oracle agrees: {}", yes_no(rep.oracle_agrees()));
    }
    s
}
