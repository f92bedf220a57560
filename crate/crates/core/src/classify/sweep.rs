//! Exhaustive and random sweeps that run every classification against the
//! homology oracle and record one line per instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use super::conjecture::conjecture_with_cm;
use super::generate::{generate_instances, GenerateOptions, InstanceFamily};
use super::{
    classify_bipartite, classify_whiskered, cover_structure_violations, is_bipartite_instance,
    oracle_check, ClassifyOptions, ConjectureVerdict, GraphClass, OracleCheck, Verdict,
};
use crate::covers::{alexander_dual, associated_primes, is_unmixed, AssocMethod, UnmixedMethod};
use crate::error::Result;
use crate::graph::{find_leaf_perfect_matching, render_graph, WeightedOrientedGraph};
use crate::ideal::edge_ideal;
use crate::oracle::{
    boundary_squares_vanish, oracle_cm_monomial, reduced_homology, stanley_reisner, Field,
};
use crate::polarize::polarize_ideal;
use crate::Limits;

/// Graphs above this size skip the associated-primes route comparison.
pub const ROUTE_CHECK_MAX_VERTICES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepOptions {
    pub family: InstanceFamily,
    pub generate: GenerateOptions,
    /// Field for the oracle.
    pub field: Field,
    /// Second field; instances where the Cohen-Macaulay verdicts differ
    /// between the two fields are logged, not failed.
    pub cross_field: Option<Field>,
    pub limits: Limits,
}

impl SweepOptions {
    pub fn new(family: InstanceFamily) -> Self {
        SweepOptions {
            family,
            generate: GenerateOptions::default(),
            field: Field::default(),
            cross_field: None,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail { detail: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    #[serde(flatten)]
    pub outcome: CheckOutcome,
}

/// Everything the sweep learned about one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub id: usize,
    pub graph: String,
    pub graph_class: GraphClass,
    pub oracle: OracleCheck,
    pub checks: Vec<CheckResult>,
    pub conjecture: ConjectureVerdict,
    /// Set when the second field disagrees with the first.
    pub field_disagreement: Option<String>,
}

impl InstanceRecord {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.outcome, CheckOutcome::Fail { .. }))
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.outcome)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub passes: usize,
    pub failures: usize,
    pub classes: BTreeMap<&'static str, usize>,
    pub checks: BTreeMap<&'static str, CheckTally>,
    pub conjecture: BTreeMap<&'static str, usize>,
    pub field_disagreements: usize,
    pub wall_time_ms: u128,
}

impl SweepSummary {
    pub fn tally(&self, check: &str) -> CheckTally {
        self.checks.get(check).copied().unwrap_or_default()
    }

    /// A plain-text table: totals first, then one row per check.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instances  {}", self.instances);
        let _ = writeln!(out, "passes     {}", self.passes);
        let _ = writeln!(out, "failures   {}", self.failures);
        let _ = writeln!(out, "wall time  {} ms", self.wall_time_ms);
        for (class, n) in &self.classes {
            let _ = writeln!(out, "class {class:<18} {n}");
        }
        for (verdict, n) in &self.conjecture {
            let _ = writeln!(out, "conjecture {verdict:<13} {n}");
        }
        if self.field_disagreements > 0 {
            let _ = writeln!(out, "field disagreements {}", self.field_disagreements);
        }
        let _ = writeln!(
            out,
            "{:<40} {:>6} {:>6} {:>8}",
            "check", "pass", "fail", "skipped"
        );
        for (name, t) in &self.checks {
            let _ = writeln!(
                out,
                "{name:<40} {:>6} {:>6} {:>8}",
                t.pass, t.fail, t.skipped
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRun {
    pub summary: SweepSummary,
    pub records: Vec<InstanceRecord>,
}

/// Generates the family and checks every instance.
pub fn run_sweep(opts: &SweepOptions) -> Result<SweepRun> {
    let start = Instant::now();
    let instances = generate_instances(&opts.family, opts.generate)?;
    let mut run = sweep_instances(&instances, opts)?;
    run.summary.wall_time_ms = start.elapsed().as_millis();
    Ok(run)
}

/// Checks the given graphs in order; `opts.family` and `opts.generate` are
/// not used.
pub fn sweep_instances(
    instances: &[WeightedOrientedGraph],
    opts: &SweepOptions,
) -> Result<SweepRun> {
    let start = Instant::now();
    let records = instances
        .iter()
        .enumerate()
        .map(|(id, d)| check_instance(id, d, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = SweepSummary {
        instances: records.len(),
        ..SweepSummary::default()
    };
    for r in &records {
        if r.passed() {
            summary.passes += 1;
        } else {
            summary.failures += 1;
        }
        *summary.classes.entry(r.graph_class.label()).or_default() += 1;
        *summary.conjecture.entry(r.conjecture.label()).or_default() += 1;
        summary.field_disagreements += usize::from(r.field_disagreement.is_some());
        for c in &r.checks {
            let t = summary.checks.entry(c.name).or_default();
            match c.outcome {
                CheckOutcome::Pass => t.pass += 1,
                CheckOutcome::Fail { .. } => t.fail += 1,
                CheckOutcome::Skipped { .. } => t.skipped += 1,
            }
        }
    }
    summary.wall_time_ms = start.elapsed().as_millis();
    Ok(SweepRun { summary, records })
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn push(&mut self, name: &'static str, holds: bool, detail: impl FnOnce() -> String) {
        let outcome = if holds {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail { detail: detail() }
        };
        self.0.push(CheckResult { name, outcome });
    }

    fn skip(&mut self, name: &'static str, reason: String) {
        self.0.push(CheckResult {
            name,
            outcome: CheckOutcome::Skipped { reason },
        });
    }
}

fn yes(v: Verdict) -> bool {
    v == Verdict::Yes
}

/// Runs every applicable check on one graph (boundary weights normalized).
pub fn check_instance(
    id: usize,
    d: &WeightedOrientedGraph,
    opts: &SweepOptions,
) -> Result<InstanceRecord> {
    let d = d.normalize_boundary_weights();
    let limits = &opts.limits;
    let ideal = edge_ideal(&d);
    let oracle = oracle_check(&ideal, opts.field, limits, true)?;
    let classify_opts = ClassifyOptions {
        oracle: None,
        dual_quotients: true,
        limits: *limits,
    };
    let mut checks = Checks(Vec::new());
    let mut graph_class = GraphClass::Uncovered;

    if find_leaf_perfect_matching(&d.underlying_graph()).is_some() {
        let rep = classify_whiskered(&d, &classify_opts)?;
        graph_class = rep.graph_class;
        let tail = yes(rep
            .condition("whisker_tail_weight")
            .map_or(Verdict::Unknown, |c| c.status));
        let unmixed = yes(rep.verdict_unmixed);
        checks.push(
            "whisker_equivalence",
            tail == unmixed && unmixed == oracle.cm,
            || {
                format!(
                    "tail weight {tail}, unmixed {unmixed}, oracle Cohen-Macaulay {}",
                    oracle.cm
                )
            },
        );
        let linear = rep.dual.as_ref().is_some_and(|o| o.check.linear);
        if tail {
            checks.push("tail_weight_implies_dual_quotients", linear, || {
                "the canonical dual ordering does not have linear quotients".to_string()
            });
        }
        if graph_class == GraphClass::SingleViolation {
            checks.push(
                "single_violation_sequentially_cm",
                linear && oracle.sequentially_cm,
                || {
                    format!(
                        "dual linear quotients {linear}, oracle sequentially Cohen-Macaulay {}",
                        oracle.sequentially_cm
                    )
                },
            );
        }
        let structure = cover_structure_violations(&d, limits)?;
        checks.push("cover_structure", structure.holds(), || {
            structure.violations.join("; ")
        });
    }

    if is_bipartite_instance(&d) {
        let rep = classify_bipartite(&d, &classify_opts)?;
        if graph_class == GraphClass::Uncovered {
            graph_class = GraphClass::Bipartite;
        }
        checks.push(
            "bipartite_verdict_matches_oracle",
            rep.verdict_cm.known() == Some(oracle.cm),
            || {
                format!(
                    "verdict {}, oracle Cohen-Macaulay {}",
                    rep.verdict_cm.label(),
                    oracle.cm
                )
            },
        );
        if yes(rep.verdict_cm) {
            let status = rep
                .condition("matched_edge_tail_weight")
                .map(|c| (c.status, c.witness.clone()));
            checks.push(
                "matched_edge_tail_weight",
                matches!(status, Some((Verdict::Yes, _))),
                || status.and_then(|(_, w)| w).unwrap_or_default(),
            );
        }
    }

    let conjecture = conjecture_with_cm(&d, opts.field, limits, Some(oracle.cm))?;
    if graph_class == GraphClass::Bipartite || is_bipartite_instance(&d) {
        checks.push(
            "conjecture",
            conjecture.verdict != ConjectureVerdict::Counterexample,
            || "unmixed with a Cohen-Macaulay radical, but not Cohen-Macaulay".to_string(),
        );
    }

    let n = d.vertex_count();
    if n <= ROUTE_CHECK_MAX_VERTICES {
        let by_covers = associated_primes(&d, AssocMethod::StrongCovers, limits)?;
        let by_pol = associated_primes(&d, AssocMethod::Depolarization, limits)?;
        checks.push("assoc_routes_agree", by_covers == by_pol, || {
            format!("strong covers give {by_covers:?}, depolarization gives {by_pol:?}")
        });
    } else {
        checks.skip("assoc_routes_agree", format!("{n} vertices"));
    }
    let l3 = is_unmixed(&d, UnmixedMethod::StrongL3, limits)?.unmixed;
    let heights = is_unmixed(&d, UnmixedMethod::Heights, limits)?.unmixed;
    checks.push(
        "unmixed_methods_agree",
        l3 == heights && heights == oracle.unmixed,
        || {
            format!(
                "strong covers {l3}, heights {heights}, oracle facets pure {}",
                oracle.unmixed
            )
        },
    );

    let pol = polarize_ideal(&ideal)?;
    let vars = pol.ideal().var_count();
    if vars <= limits.cover_vertices {
        let twice = alexander_dual(
            &alexander_dual(pol.ideal(), limits.cover_vertices)?,
            limits.cover_vertices,
        )?;
        checks.push(
            "duality_involution",
            twice.same_generators(pol.ideal()),
            || "the double dual differs from the polarization".to_string(),
        );
    } else {
        checks.skip("duality_involution", format!("{vars} polarized variables"));
    }

    let depth = oracle.depth.expect("requested");
    let delta = stanley_reisner(pol.ideal(), limits.cover_vertices)?;
    let homology = reduced_homology(&delta, opts.field, limits.faces)?;
    let boundaries = boundary_squares_vanish(&delta, limits.faces)?;
    let sane = depth.depth <= depth.dim
        && depth.is_cm() == oracle.cm
        && (!oracle.cm || (oracle.sequentially_cm && oracle.unmixed))
        && homology.euler_consistent()
        && boundaries;
    checks.push("oracle_sanity", sane, || {
        format!(
            "{oracle:?}; boundary squares vanish {boundaries}; Euler consistent {}",
            homology.euler_consistent()
        )
    });

    let field_disagreement = match opts.cross_field {
        Some(f) if f != opts.field => {
            let other = oracle_cm_monomial(&ideal, f, limits)?;
            (other != oracle.cm).then(|| {
                format!(
                    "Cohen-Macaulay over {}: {}, over {f}: {other}",
                    opts.field, oracle.cm
                )
            })
        }
        _ => None,
    };

    Ok(InstanceRecord {
        id,
        graph: render_graph(&d),
        graph_class,
        oracle,
        checks: checks.0,
        conjecture: conjecture.verdict,
        field_disagreement,
    })
}
