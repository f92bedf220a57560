//! Cohen-Macaulay classification for whiskered and bipartite weighted
//! oriented graphs, plus the instance generators and sweep harness that
//! test the classifications against the homology oracle.

mod bipartite;
pub mod canon;
mod conjecture;
mod cover_structure;
pub mod generate;
pub mod sweep;
mod whiskered;

pub use bipartite::{classify_bipartite, neighborhood_conditions, NeighborhoodFailure};
pub use conjecture::{check_conjecture, ConjectureReport, ConjectureVerdict};
pub use cover_structure::{cover_structure_violations, CoverStructureReport};
pub use whiskered::{
    artinian_witness, classify_single_violation, classify_whiskered, mixed_cover_for_violation,
    reduce_leaf_weights, whisker_violations, ArtinianWitness,
};

use serde::Serialize;

use crate::covers::DualOrdering;
use crate::error::Result;
use crate::graph::{bipartition, find_leaf_perfect_matching, WeightedOrientedGraph};
use crate::ideal::MonomialIdeal;
use crate::oracle::{
    depth_skeleton, is_cm_complex, is_sequentially_cm_complex, stanley_reisner, DepthReport, Field,
};
use crate::polarize::polarize_ideal;
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    /// Leaf perfect matching; zero or at least two heavy matched tails.
    Whiskered,
    /// Leaf perfect matching with exactly one heavy matched tail.
    SingleViolation,
    /// Bipartite without isolated vertices, and not whiskered.
    Bipartite,
    /// None of the above.
    Uncovered,
}

impl GraphClass {
    pub fn label(self) -> &'static str {
        match self {
            GraphClass::Whiskered => "whiskered",
            GraphClass::SingleViolation => "single-violation",
            GraphClass::Bipartite => "bipartite",
            GraphClass::Uncovered => "uncovered",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl Verdict {
    pub fn known(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

/// Outcome of one named condition, with a human-readable witness when it
/// fails (or, for some conditions, when it holds).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionStatus {
    pub label: &'static str,
    pub status: Verdict,
    pub witness: Option<String>,
}

impl ConditionStatus {
    pub(crate) fn new(label: &'static str, holds: bool, witness: Option<String>) -> Self {
        ConditionStatus {
            label,
            status: holds.into(),
            witness,
        }
    }

    pub(crate) fn unknown(label: &'static str, why: &str) -> Self {
        ConditionStatus {
            label,
            status: Verdict::Unknown,
            witness: Some(why.to_string()),
        }
    }
}

/// What the homology oracle says about `R/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub field: Field,
    pub cm: bool,
    pub sequentially_cm: bool,
    /// All facets of the Stanley-Reisner complex of the polarization have
    /// the same size.
    pub unmixed: bool,
    pub depth: Option<DepthReport>,
}

/// Runs the oracle on `R/I` through its polarization. Depth is only
/// computed when asked for, since it costs another pass over every link.
pub fn oracle_check(
    ideal: &MonomialIdeal,
    field: Field,
    limits: &Limits,
    with_depth: bool,
) -> Result<OracleCheck> {
    let pol = polarize_ideal(ideal)?;
    let delta = stanley_reisner(pol.ideal(), limits.cover_vertices)?;
    let cm = is_cm_complex(&delta, field, limits.faces)?;
    // Cohen-Macaulay complexes have Cohen-Macaulay pure skeletons
    let sequentially_cm = cm || is_sequentially_cm_complex(&delta, field, limits.faces)?;
    let depth = if with_depth {
        Some(depth_skeleton(ideal, field, limits)?)
    } else {
        None
    };
    Ok(OracleCheck {
        field,
        cm,
        sequentially_cm,
        unmixed: delta.is_pure(),
        depth,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub graph_class: GraphClass,
    pub conditions: Vec<ConditionStatus>,
    pub verdict_cm: Verdict,
    pub verdict_unmixed: Verdict,
    pub verdict_scm: Verdict,
    /// The matching the conditions were evaluated against, as name pairs.
    pub matching: Vec<(String, String)>,
    pub dual: Option<DualOrdering>,
    pub oracle: Option<OracleCheck>,
}

impl ClassificationReport {
    pub fn condition(&self, label: &str) -> Option<&ConditionStatus> {
        self.conditions.iter().find(|c| c.label == label)
    }

    /// False when the oracle ran and contradicts a known verdict.
    pub fn oracle_agrees(&self) -> bool {
        let Some(o) = &self.oracle else { return true };
        let same = |v: Verdict, b: bool| v.known().is_none_or(|k| k == b);
        same(self.verdict_cm, o.cm)
            && same(self.verdict_scm, o.sequentially_cm)
            && same(self.verdict_unmixed, o.unmixed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyOptions {
    /// Cross-check with the homology oracle over this field.
    pub oracle: Option<Field>,
    /// Build and verify the dual ordering for whiskered graphs.
    pub dual_quotients: bool,
    pub limits: Limits,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            oracle: None,
            dual_quotients: true,
            limits: Limits::default(),
        }
    }
}

fn has_isolated_vertex(d: &WeightedOrientedGraph) -> bool {
    (0..d.vertex_count()).any(|v| d.degree(v) == 0)
}

/// Whether the bipartite classification applies.
pub fn is_bipartite_instance(d: &WeightedOrientedGraph) -> bool {
    d.vertex_count() > 0 && !has_isolated_vertex(d) && bipartition(&d.underlying_graph()).is_ok()
}

/// Picks the characterization that applies: whiskered graphs first, then
/// bipartite graphs, otherwise an `uncovered` report with only the
/// unmixedness verdict (and the oracle, if requested).
pub fn classify(d: &WeightedOrientedGraph, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    if find_leaf_perfect_matching(&d.underlying_graph()).is_some() {
        return classify_whiskered(d, opts);
    }
    if is_bipartite_instance(d) {
        return classify_bipartite(d, opts);
    }
    uncovered_report(&d.normalize_boundary_weights(), opts, Vec::new())
}

pub(crate) fn uncovered_report(
    d: &WeightedOrientedGraph,
    opts: &ClassifyOptions,
    conditions: Vec<ConditionStatus>,
) -> Result<ClassificationReport> {
    let unmixed =
        crate::covers::is_unmixed(d, crate::covers::UnmixedMethod::StrongL3, &opts.limits)?;
    let oracle = opts
        .oracle
        .map(|f| oracle_check(&crate::ideal::edge_ideal(d), f, &opts.limits, true))
        .transpose()?;
    Ok(ClassificationReport {
        graph_class: GraphClass::Uncovered,
        conditions,
        verdict_cm: Verdict::Unknown,
        verdict_unmixed: unmixed.unmixed.into(),
        verdict_scm: Verdict::Unknown,
        matching: Vec::new(),
        dual: None,
        oracle,
    })
}

pub(crate) fn named_pairs(
    d: &WeightedOrientedGraph,
    pairs: &[(usize, usize)],
) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|&(x, y)| (d.name(x).to_string(), d.name(y).to_string()))
        .collect()
}
