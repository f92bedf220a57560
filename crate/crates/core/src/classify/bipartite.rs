use serde::Serialize;

use super::{
    named_pairs, oracle_check, ClassificationReport, ClassifyOptions, ConditionStatus, GraphClass,
    Verdict,
};
use crate::covers::{is_unmixed, UnmixedMethod};
use crate::error::{Error, Result};
use crate::graph::{
    bipartition, perfect_matching_orders, MatchingOrderCheck, VertexId, WeightedOrientedGraph,
};
use crate::ideal::edge_ideal;

/// A heavy vertex `v` with out-neighbor `u` whose partner `u'` breaks the
/// neighborhood condition: either `u'` has a neighbor outside `N+(v)`, or an
/// in-neighbor of `u'` is heavy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborhoodFailure {
    pub heavy: VertexId,
    pub out_neighbor: VertexId,
    pub partner: VertexId,
    /// The offending neighbor of `partner`.
    pub culprit: VertexId,
    /// True when `culprit` is a heavy in-neighbor rather than a neighbor
    /// outside `N+(heavy)`.
    pub heavy_in_neighbor: bool,
}

/// Checks, for every vertex `v` with `w(v) >= 2` and every `u` in `N+(v)`,
/// that the matched partner `u'` of `u` has `N(u') ⊆ N+(v)` and only weight-1
/// in-neighbors. The result is split by the side of `v`: first the failures
/// at heavy vertices of `side_y`, then those at heavy vertices of `side_x`.
pub fn neighborhood_conditions(
    d: &WeightedOrientedGraph,
    pairs: &[(VertexId, VertexId)],
    side_y: &[VertexId],
) -> (Option<NeighborhoodFailure>, Option<NeighborhoodFailure>) {
    let mut partner = vec![usize::MAX; d.vertex_count()];
    for &(x, y) in pairs {
        partner[x] = y;
        partner[y] = x;
    }
    let check = |v: VertexId| -> Option<NeighborhoodFailure> {
        if d.weight(v) < 2 {
            return None;
        }
        let out = d.out_neighbors(v);
        for &u in out {
            let p = partner[u];
            let fail = |culprit, heavy_in_neighbor| NeighborhoodFailure {
                heavy: v,
                out_neighbor: u,
                partner: p,
                culprit,
                heavy_in_neighbor,
            };
            if let Some(&c) = d
                .out_neighbors(p)
                .iter()
                .chain(d.in_neighbors(p))
                .find(|w| !out.contains(w))
            {
                return Some(fail(c, false));
            }
            if let Some(&c) = d.in_neighbors(p).iter().find(|&&w| d.weight(w) != 1) {
                return Some(fail(c, true));
            }
        }
        None
    };
    let mut on_y = None;
    let mut on_x = None;
    for v in 0..d.vertex_count() {
        let slot = if side_y.contains(&v) {
            &mut on_y
        } else {
            &mut on_x
        };
        if slot.is_none() {
            *slot = check(v);
        }
    }
    (on_y, on_x)
}

fn describe_failure(d: &WeightedOrientedGraph, f: &NeighborhoodFailure) -> String {
    let n = |v| d.name(v);
    if f.heavy_in_neighbor {
        format!(
            "w({}) = {}, {} -> {}, and {} (partner of {}) has the heavy in-neighbor {}",
            n(f.heavy),
            d.weight(f.heavy),
            n(f.heavy),
            n(f.out_neighbor),
            n(f.partner),
            n(f.out_neighbor),
            n(f.culprit)
        )
    } else {
        format!(
            "w({}) = {}, {} -> {}, and {} (partner of {}) has the neighbor {} outside N+({})",
            n(f.heavy),
            d.weight(f.heavy),
            n(f.heavy),
            n(f.out_neighbor),
            n(f.partner),
            n(f.out_neighbor),
            n(f.culprit),
            n(f.heavy)
        )
    }
}

/// Bipartite classification. Every perfect matching is tried; the graph is
/// Cohen-Macaulay when one of them has an admissible order and passes both
/// neighborhood conditions.
pub fn classify_bipartite(
    d: &WeightedOrientedGraph,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let d = d.normalize_boundary_weights();
    let g = d.underlying_graph();
    let sides = bipartition(&g)?;
    if let Some(v) = (0..d.vertex_count()).find(|&v| d.degree(v) == 0) {
        return Err(Error::InvalidGraph(format!(
            "isolated vertex `{}`",
            d.name(v)
        )));
    }
    let checks = perfect_matching_orders(&g, opts.limits.matching_pairs)?;
    let name = |v: VertexId| d.name(v).to_string();

    let mut conditions = vec![ConditionStatus::new(
        "perfect_matching",
        !checks.is_empty(),
        checks
            .is_empty()
            .then(|| "the underlying graph has no perfect matching".to_string()),
    )];
    let acyclic = checks
        .iter()
        .any(|c| !matches!(c, MatchingOrderCheck::Cyclic { .. }));
    let cycle_witness = checks.iter().find_map(|c| match c {
        MatchingOrderCheck::Cyclic { first, second, .. } => Some(format!(
            "{} ~ {} and {} ~ {} force each pair before the other",
            name(first.0),
            name(second.1),
            name(second.0),
            name(first.1)
        )),
        _ => None,
    });
    let admissible: Vec<&crate::graph::CmOrdering> = checks
        .iter()
        .filter_map(|c| match c {
            MatchingOrderCheck::Admissible(o) => Some(o),
            _ => None,
        })
        .collect();
    let triple_witness = checks.iter().find_map(|c| match c {
        MatchingOrderCheck::Intransitive {
            triple: [a, b, c], ..
        } => Some(format!(
            "{} ~ {} and {} ~ {} but not {} ~ {}",
            name(a.0),
            name(b.1),
            name(b.0),
            name(c.1),
            name(a.0),
            name(c.1)
        )),
        _ => None,
    });
    if checks.is_empty() {
        conditions.push(ConditionStatus::unknown(
            "forward_edges",
            "no perfect matching",
        ));
        conditions.push(ConditionStatus::unknown(
            "transitive_edges",
            "no perfect matching",
        ));
    } else {
        conditions.push(ConditionStatus::new(
            "forward_edges",
            acyclic,
            (!acyclic).then_some(cycle_witness).flatten(),
        ));
        let transitive = !admissible.is_empty();
        let witness = if transitive { None } else { triple_witness };
        if acyclic {
            conditions.push(ConditionStatus::new(
                "transitive_edges",
                transitive,
                witness,
            ));
        } else {
            conditions.push(ConditionStatus::unknown(
                "transitive_edges",
                "no matching has an order",
            ));
        }
    }

    // Prefer an admissible matching passing both neighborhood conditions;
    // otherwise report against the first admissible one, or failing that the
    // first perfect matching.
    let evaluated: Vec<(Vec<(VertexId, VertexId)>, bool, _)> = checks
        .iter()
        .map(|c| {
            let (pairs, ok) = match c {
                MatchingOrderCheck::Admissible(o) => (o.pairs.clone(), true),
                MatchingOrderCheck::Cyclic { pairs, .. }
                | MatchingOrderCheck::Intransitive { pairs, .. } => (pairs.clone(), false),
            };
            let nb = neighborhood_conditions(&d, &pairs, &sides.side_y);
            (pairs, ok, nb)
        })
        .collect();
    let chosen = evaluated
        .iter()
        .find(|(_, ok, (a, b))| *ok && a.is_none() && b.is_none())
        .or_else(|| evaluated.iter().find(|(_, ok, _)| *ok))
        .or_else(|| evaluated.first());

    let cm;
    let mut matching = Vec::new();
    match chosen {
        Some((pairs, ok, (on_y, on_x))) => {
            conditions.push(ConditionStatus::new(
                "heavy_y_neighborhoods",
                on_y.is_none(),
                on_y.as_ref().map(|f| describe_failure(&d, f)),
            ));
            conditions.push(ConditionStatus::new(
                "heavy_x_neighborhoods",
                on_x.is_none(),
                on_x.as_ref().map(|f| describe_failure(&d, f)),
            ));
            cm = *ok && on_y.is_none() && on_x.is_none();
            let heavy_tail = pairs
                .iter()
                .flat_map(|&(x, y)| [(x, y), (y, x)])
                .find(|&(t, h)| d.has_edge(t, h) && d.weight(t) != 1);
            conditions.push(ConditionStatus::new(
                "matched_edge_tail_weight",
                heavy_tail.is_none(),
                heavy_tail.map(|(t, h)| {
                    format!(
                        "matched edge ({}, {}) has w({}) = {}",
                        name(t),
                        name(h),
                        name(t),
                        d.weight(t)
                    )
                }),
            ));
            matching = named_pairs(&d, pairs);
        }
        None => {
            for label in [
                "heavy_y_neighborhoods",
                "heavy_x_neighborhoods",
                "matched_edge_tail_weight",
            ] {
                conditions.push(ConditionStatus::unknown(label, "no perfect matching"));
            }
            cm = false;
        }
    }

    let unmixed = is_unmixed(&d, UnmixedMethod::StrongL3, &opts.limits)?;
    let oracle = opts
        .oracle
        .map(|f| oracle_check(&edge_ideal(&d), f, &opts.limits, true))
        .transpose()?;
    Ok(ClassificationReport {
        graph_class: GraphClass::Bipartite,
        conditions,
        verdict_cm: cm.into(),
        verdict_unmixed: unmixed.unmixed.into(),
        verdict_scm: if cm { Verdict::Yes } else { Verdict::Unknown },
        matching,
        dual: None,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::Field;

    fn oracle_opts() -> ClassifyOptions {
        ClassifyOptions {
            oracle: Some(Field::Rationals),
            ..ClassifyOptions::default()
        }
    }

    #[test]
    fn bip_fixture_passes_everything() {
        let r = classify_bipartite(&fixtures::d_bip(), &oracle_opts()).unwrap();
        for c in &r.conditions {
            assert_eq!(c.status, Verdict::Yes, "{c:?}");
        }
        assert_eq!(r.verdict_cm, Verdict::Yes);
        assert!(r.oracle_agrees());
        let expected: Vec<(String, String)> = (1..=4)
            .map(|i| (format!("x{i}"), format!("y{i}")))
            .collect();
        assert_eq!(r.matching, expected);
    }

    #[test]
    fn heavier_weight_keeps_the_verdict() {
        let d = fixtures::d_bip();
        let heavier = d.with_weight(d.vertex("y4").unwrap(), 3).unwrap();
        let r = classify_bipartite(&heavier, &oracle_opts()).unwrap();
        assert_eq!(r.verdict_cm, Verdict::Yes);
        assert!(r.oracle.as_ref().unwrap().cm);
    }

    #[test]
    fn reoriented_edge_is_decided_by_the_conditions() {
        // (y4, x1) becomes (x1, y4); y4 keeps weight 2
        let d = fixtures::d_bip();
        let (x1, y4) = (d.vertex("x1").unwrap(), d.vertex("y4").unwrap());
        let turned = d.with_reversed_edge(y4, x1).unwrap();
        let r = classify_bipartite(&turned, &oracle_opts()).unwrap();
        let o = r.oracle.as_ref().unwrap();
        assert_eq!(r.verdict_cm.known(), Some(o.cm));
        // y4 becomes a sink, so its weight normalizes to 1; the heavy x1 and
        // x2 then pass both neighborhood conditions
        assert_eq!(
            r.condition("heavy_x_neighborhoods").unwrap().status,
            Verdict::Yes
        );
        assert_eq!(r.verdict_cm, Verdict::Yes);
    }

    #[test]
    fn heavy_in_neighbor_of_a_partner_fails() {
        // with w(y2) = 2, x1 -> y2 leads to the partner x2, whose in-neighbor
        // y2 is now heavy
        let d = fixtures::d_bip();
        let heavy = d.with_weight(d.vertex("y2").unwrap(), 2).unwrap();
        let r = classify_bipartite(&heavy, &oracle_opts()).unwrap();
        let failure = r.condition("heavy_x_neighborhoods").unwrap();
        assert_eq!(failure.status, Verdict::No);
        assert!(failure
            .witness
            .as_deref()
            .unwrap()
            .contains("heavy in-neighbor y2"));
        assert_eq!(r.verdict_cm, Verdict::No);
        assert!(r.oracle_agrees());
    }

    #[test]
    fn non_bipartite_and_isolated_inputs_are_errors() {
        let tri = WeightedOrientedGraph::from_named(
            &[("a", 1), ("b", 1), ("c", 1)],
            &[("a", "b"), ("b", "c"), ("c", "a")],
        )
        .unwrap();
        assert_eq!(
            classify_bipartite(&tri, &ClassifyOptions::default()),
            Err(Error::NotBipartite)
        );
        let iso = WeightedOrientedGraph::from_named(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b")])
            .unwrap();
        assert!(matches!(
            classify_bipartite(&iso, &ClassifyOptions::default()),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn square_has_no_admissible_order() {
        let c4 = WeightedOrientedGraph::from_named(
            &[("x1", 1), ("x2", 1), ("y1", 1), ("y2", 1)],
            &[("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")],
        )
        .unwrap();
        let r = classify_bipartite(&c4, &oracle_opts()).unwrap();
        assert_eq!(
            r.condition("perfect_matching").unwrap().status,
            Verdict::Yes
        );
        assert_eq!(r.condition("forward_edges").unwrap().status, Verdict::No);
        assert_eq!(r.verdict_cm, Verdict::No);
        assert!(!r.oracle.as_ref().unwrap().cm);
    }
}
