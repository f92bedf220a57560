use std::collections::BTreeSet;

use serde::Serialize;

use super::{
    named_pairs, oracle_check, uncovered_report, ClassificationReport, ClassifyOptions,
    ConditionStatus, GraphClass, Verdict,
};
use crate::covers::{
    canonical_dual_ordering_with, is_unmixed, CoverPartition, UnmixedCertificate, UnmixedMethod,
};
use crate::error::{Error, Result};
use crate::graph::{find_leaf_perfect_matching, LeafMatching, VertexId, WeightedOrientedGraph};
use crate::ideal::{edge_ideal, render_monomial, Monomial, MonomialIdeal};
use crate::polarize::polarize_ideal;

/// Matched pairs `(x, y)` oriented `x -> y` with `w(x) > 1`, as indices
/// into `matching.pairs`.
pub fn whisker_violations(d: &WeightedOrientedGraph, matching: &LeafMatching) -> Vec<usize> {
    matching
        .pairs
        .iter()
        .enumerate()
        .filter(|(_, &(x, y))| d.has_edge(x, y) && d.weight(x) > 1)
        .map(|(i, _)| i)
        .collect()
}

/// Resets every matched leaf to weight 1. A leaf's variable is free in the
/// edge ideal, so this changes neither depth nor dimension.
pub fn reduce_leaf_weights(
    d: &WeightedOrientedGraph,
    matching: &LeafMatching,
) -> Result<WeightedOrientedGraph> {
    let mut g = d.clone();
    for &(_, y) in &matching.pairs {
        g = g.with_weight(y, 1)?;
    }
    Ok(g)
}

/// For a violating pair `(x_s, y_s)` (heavy `x_s`, edge `x_s -> y_s`) and an
/// in-neighbor `x_l` of `x_s` among the matched `x` vertices, the cover
/// `({x_1..x_r} \ {x_l}) ∪ {y_l, y_s}` of the underlying graph. It is strong
/// with `L3 = {y_s}`, so it names an embedded prime.
pub fn mixed_cover_for_violation(
    d: &WeightedOrientedGraph,
    matching: &LeafMatching,
    pair: usize,
) -> Option<CoverPartition> {
    let (xs, ys) = *matching.pairs.get(pair)?;
    if !(d.has_edge(xs, ys) && d.weight(xs) > 1) {
        return None;
    }
    let l = matching
        .pairs
        .iter()
        .position(|&(xl, _)| d.has_edge(xl, xs))?;
    let (xl, yl) = matching.pairs[l];
    let mut cover: BTreeSet<VertexId> = matching.pairs.iter().map(|&(x, _)| x).collect();
    cover.remove(&xl);
    cover.insert(yl);
    cover.insert(ys);
    Some(CoverPartition::new(d, &cover))
}

fn describe_certificate(d: &WeightedOrientedGraph, c: &UnmixedCertificate) -> String {
    let names = |s: &[VertexId]| s.iter().map(|&v| d.name(v)).collect::<Vec<_>>().join(",");
    match c {
        UnmixedCertificate::Cover(p) => format!(
            "strong cover {{{}}} with L3 = {{{}}}",
            names(&p.cover),
            names(&p.l3)
        ),
        UnmixedCertificate::PrimePair(a, b) => format!(
            "covers {{{}}} and {{{}}} differ in size",
            names(a),
            names(b)
        ),
    }
}

/// Whiskered classification. Boundary weights are normalized first; the
/// Cohen-Macaulay verdict is the matched-tail weight condition, checked
/// syntactically.
pub fn classify_whiskered(
    d: &WeightedOrientedGraph,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let d = d.normalize_boundary_weights();
    let matching =
        find_leaf_perfect_matching(&d.underlying_graph()).ok_or(Error::NoLeafMatching)?;
    let violations = whisker_violations(&d, &matching);

    let mut conditions = Vec::new();
    let tail_witness = violations.first().map(|&i| {
        let (x, y) = matching.pairs[i];
        format!(
            "edge ({}, {}) with w({}) = {}",
            d.name(x),
            d.name(y),
            d.name(x),
            d.weight(x)
        )
    });
    conditions.push(ConditionStatus::new(
        "whisker_tail_weight",
        violations.is_empty(),
        tail_witness,
    ));

    let unmixed = is_unmixed(&d, UnmixedMethod::StrongL3, &opts.limits)?;
    conditions.push(ConditionStatus::new(
        "unmixed",
        unmixed.unmixed,
        unmixed
            .certificate
            .as_ref()
            .map(|c| describe_certificate(&d, c)),
    ));

    // With one violation the violating pair goes first in the variable order.
    let order = match violations.as_slice() {
        [i] => matching.with_first(*i),
        _ => matching.clone(),
    };
    let dual = if opts.dual_quotients {
        let ordering = canonical_dual_ordering_with(&d, &order, &opts.limits)?;
        let witness = ordering.check.first_failure.map(|t| {
            format!(
                "colon at position {} is not generated by variables (generator {})",
                t + 1,
                render_monomial(&ordering.generators[t], &ordering.registry)
            )
        });
        conditions.push(ConditionStatus::new(
            "dual_linear_quotients",
            ordering.check.linear,
            witness,
        ));
        Some(ordering)
    } else {
        None
    };

    let cm = violations.is_empty();
    let verdict_scm = if cm || violations.len() == 1 {
        Verdict::Yes
    } else {
        Verdict::Unknown
    };
    let oracle = match opts.oracle {
        Some(field) => {
            let reduced = reduce_leaf_weights(&d, &matching)?;
            Some(oracle_check(
                &edge_ideal(&reduced),
                field,
                &opts.limits,
                true,
            )?)
        }
        None => None,
    };
    Ok(ClassificationReport {
        graph_class: if violations.len() == 1 {
            GraphClass::SingleViolation
        } else {
            GraphClass::Whiskered
        },
        conditions,
        verdict_cm: cm.into(),
        verdict_unmixed: unmixed.unmixed.into(),
        verdict_scm,
        matching: named_pairs(&d, &order.pairs),
        dual,
        oracle,
    })
}

/// Classification for whiskered graphs with exactly one heavy matched tail.
/// Anything else comes back as `uncovered`.
pub fn classify_single_violation(
    d: &WeightedOrientedGraph,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let normalized = d.normalize_boundary_weights();
    let count = find_leaf_perfect_matching(&normalized.underlying_graph())
        .map(|m| whisker_violations(&normalized, &m).len());
    match count {
        Some(1) => classify_whiskered(d, opts),
        Some(n) => uncovered_report(
            &normalized,
            opts,
            vec![ConditionStatus::new(
                "single_violation",
                false,
                Some(format!("{n} matched edges have a heavy tail")),
            )],
        ),
        None => uncovered_report(
            &normalized,
            opts,
            vec![ConditionStatus::unknown(
                "single_violation",
                "no leaf perfect matching",
            )],
        ),
    }
}

/// The Artinian ideal `J = I(H) + (z_i^{w_i + 1})` built from the matched
/// `x` vertices, and its image under the identification of its polarization
/// with variables of `I(D)^pol`: `z_i_j -> x_i_j` for `j <= w(x_i)` and
/// `z_i_{w_i+1} -> y_i_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinianWitness {
    /// `J` over `z1, ..., zr` (pair order).
    pub artinian: MonomialIdeal,
    /// `(z name, target name)` for every variable of `J^pol`.
    pub identification: Vec<(String, String)>,
    /// The identified `J^pol`, over the registry of `I(D)^pol`.
    pub image: MonomialIdeal,
    /// `image` equals `I(D)^pol`.
    pub matches: bool,
}

/// Builds the witness for a whiskered graph whose leaves all have weight 1.
pub fn artinian_witness(
    d: &WeightedOrientedGraph,
    matching: &LeafMatching,
) -> Result<ArtinianWitness> {
    if let Some(&(_, y)) = matching.pairs.iter().find(|&&(_, y)| d.weight(y) != 1) {
        return Err(Error::InvalidArgument(format!(
            "leaf `{}` must have weight 1",
            d.name(y)
        )));
    }
    let r = matching.len();
    let mut pair_of = vec![usize::MAX; d.vertex_count()];
    for (i, &(x, _)) in matching.pairs.iter().enumerate() {
        pair_of[x] = i;
    }
    let z_names: Vec<String> = (1..=r).map(|i| format!("z{i}")).collect();
    let mut gens: Vec<Monomial> = d
        .edges()
        .filter(|&(u, v)| pair_of[u] != usize::MAX && pair_of[v] != usize::MAX)
        .map(|(u, v)| {
            Monomial::from_pairs([(pair_of[u] as u32, 1), (pair_of[v] as u32, d.weight(v))])
        })
        .collect();
    gens.extend(
        matching
            .pairs
            .iter()
            .enumerate()
            .map(|(i, &(x, _))| Monomial::power(i as u32, d.weight(x) + 1)),
    );
    let artinian = MonomialIdeal::new(z_names, gens)?;
    let j_pol = polarize_ideal(&artinian)?;
    let target = polarize_ideal(&edge_ideal(d))?;

    let mut map = Vec::with_capacity(j_pol.variables().len());
    let mut identification = Vec::with_capacity(map.capacity());
    for (k, pv) in j_pol.variables().iter().enumerate() {
        let (x, y) = matching.pairs[pv.base as usize];
        let w = d.weight(x);
        let (base, copy) = if pv.copy <= w { (x, pv.copy) } else { (y, 1) };
        let idx = target.index_of(base as u32, copy).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "`{}_{copy}` does not occur in the polarization",
                d.name(base)
            ))
        })?;
        map.push(idx);
        identification.push((
            j_pol.ideal().registry()[k].clone(),
            target.ideal().registry()[idx as usize].clone(),
        ));
    }
    let image = MonomialIdeal::new(
        target.ideal().registry().to_vec(),
        j_pol
            .ideal()
            .generators()
            .iter()
            .map(|g| g.rename(|v| map[v as usize])),
    )?;
    let matches = image.same_generators(target.ideal());
    Ok(ArtinianWitness {
        artinian,
        identification,
        image,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ideal::render_ideal;
    use crate::oracle::Field;

    fn matching(d: &WeightedOrientedGraph) -> LeafMatching {
        find_leaf_perfect_matching(&d.underlying_graph()).unwrap()
    }

    #[test]
    fn fig2_fails_tail_weight_but_has_dual_quotients() {
        let d = fixtures::d_fig2();
        let r = classify_whiskered(&d, &ClassifyOptions::default()).unwrap();
        let tail = r.condition("whisker_tail_weight").unwrap();
        assert_eq!(tail.status, Verdict::No);
        assert_eq!(
            tail.witness.as_deref(),
            Some("edge (x1, y1) with w(x1) = 2")
        );
        assert_eq!(r.verdict_cm, Verdict::No);
        assert_eq!(
            r.condition("dual_linear_quotients").unwrap().status,
            Verdict::Yes
        );
        assert_eq!(r.verdict_scm, Verdict::Yes);
        assert_eq!(r.matching[0], ("x1".to_string(), "y1".to_string()));
    }

    #[test]
    fn fixing_the_heavy_tail_makes_fig2_cm() {
        let d = fixtures::d_fig2();
        let fixed = d.with_weight(d.vertex("x1").unwrap(), 1).unwrap();
        let opts = ClassifyOptions {
            oracle: Some(Field::Rationals),
            ..ClassifyOptions::default()
        };
        let r = classify_whiskered(&fixed, &opts).unwrap();
        assert_eq!(r.verdict_cm, Verdict::Yes);
        assert_eq!(r.verdict_unmixed, Verdict::Yes);
        assert!(r.oracle.as_ref().unwrap().cm);
        assert!(r.oracle_agrees());
    }

    #[test]
    fn inward_whiskers_pass_vacuously() {
        // every whisker points into its base vertex
        let d = WeightedOrientedGraph::from_named(
            &[("x1", 2), ("x2", 3), ("y1", 1), ("y2", 1)],
            &[("y1", "x1"), ("y2", "x2"), ("x1", "x2")],
        )
        .unwrap();
        let r = classify_whiskered(&d, &ClassifyOptions::default()).unwrap();
        assert_eq!(
            r.condition("whisker_tail_weight").unwrap().status,
            Verdict::Yes
        );
        assert_eq!(r.verdict_cm, Verdict::Yes);
        assert_eq!(
            r.condition("dual_linear_quotients").unwrap().status,
            Verdict::Yes
        );
    }

    #[test]
    fn single_violation_routing() {
        let opts = ClassifyOptions::default();
        let fig2 = classify_single_violation(&fixtures::d_fig2(), &opts).unwrap();
        assert_eq!(fig2.graph_class, GraphClass::SingleViolation);
        assert_eq!(fig2.verdict_scm, Verdict::Yes);

        let d = fixtures::d_fig2();
        let fixed = d.with_weight(d.vertex("x1").unwrap(), 1).unwrap();
        assert_eq!(
            classify_single_violation(&fixed, &opts)
                .unwrap()
                .graph_class,
            GraphClass::Uncovered
        );

        // x3 has the in-edge x2 -> x3 and points at y3, so weight 2 there
        // adds a second heavy tail
        let x3 = d.vertex("x3").unwrap();
        let two = d.with_weight(x3, 2).unwrap();
        assert_eq!(whisker_violations(&two, &matching(&two)).len(), 2);
        let r = classify_single_violation(&two, &opts).unwrap();
        assert_eq!(r.graph_class, GraphClass::Uncovered);
        assert_eq!(
            classify_whiskered(&two, &opts).unwrap().verdict_scm,
            Verdict::Unknown
        );
    }

    #[test]
    fn violation_cover_is_strong_with_one_l3_vertex() {
        let d = fixtures::d_path();
        let m = matching(&d);
        let i = whisker_violations(&d, &m)[0];
        let p = mixed_cover_for_violation(&d, &m, i).unwrap();
        let names: Vec<&str> = p.cover.iter().map(|&v| d.name(v)).collect();
        assert_eq!(names, ["x2", "y1", "y2"]);
        assert_eq!(p.l3, vec![d.vertex("y2").unwrap()]);
        assert!(p.strong && !p.minimal);
    }

    #[test]
    fn artinian_ideal_of_the_path() {
        let d = fixtures::d_path();
        let w = artinian_witness(&d, &matching(&d)).unwrap();
        assert_eq!(
            render_ideal(&w.artinian),
            "# ring: z1 z2\nz1^3\nz1*z2^3\nz2^4\n"
        );
        // the polarizations differ when a heavy tail points at its leaf
        assert!(!w.matches);
    }

    #[test]
    fn artinian_identification_under_the_tail_condition() {
        let d = fixtures::d_fig2();
        let fixed = d.with_weight(d.vertex("x1").unwrap(), 1).unwrap();
        let w = artinian_witness(&fixed, &matching(&fixed)).unwrap();
        assert!(w.matches, "{}", render_ideal(&w.image));
        assert!(w
            .identification
            .contains(&("z2_3".to_string(), "y2_1".to_string())));
    }
}
