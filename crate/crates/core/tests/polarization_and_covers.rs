mod common;

use std::collections::BTreeSet;

use edgeideal::classify::generate::{generate_instances, GenerateOptions, InstanceFamily};
use edgeideal::classify::{artinian_witness, whisker_violations};
use edgeideal::covers::{
    alexander_dual, associated_primes, hypergraph_of, is_unmixed, search_linear_quotients,
    verify_linear_quotients, AssocMethod, UnmixedMethod,
};
use edgeideal::fixtures;
use edgeideal::graph::{find_leaf_perfect_matching, VertexId, WeightedOrientedGraph};
use edgeideal::ideal::{edge_ideal, Monomial, MonomialIdeal, Var};
use edgeideal::polarize::{partial_polarize, polarize_ideal};
use edgeideal::Limits;
use proptest::prelude::*;

use common::{all_graphs, graphs, ideals, named_generators};

/// The pieces of the colon computation at a weight-two vertex `y_r` of a
/// bipartite graph with matching `x_i <-> y_i`: `V1`/`V2` are the
/// weight-one/heavier out-neighbours of `y_r`, `H` drops `V1 + y_r` and
/// every edge `(y_j, x_i)` with `x_i` in `V2`, `L1 = I(H) + (x_i^2 : V2)`,
/// and `F` keeps the pairs outside `V1 + V2 + x_r` together with `V2`, its
/// partners, and the edges `(x_i, y_i)` for `x_i` in `V2`.
struct ColonPieces {
    l1: MonomialIdeal,
    heavy: BTreeSet<Var>,
    f: WeightedOrientedGraph,
    partner: Vec<(String, String)>,
}

fn colon_pieces(d: &WeightedOrientedGraph, pairs: &[(&str, &str)], yr: &str) -> ColonPieces {
    let v = |n: &str| d.vertex(n).unwrap();
    let partner_of = |x: VertexId| -> VertexId {
        let (_, y) = pairs.iter().find(|(a, _)| v(a) == x).unwrap();
        v(y)
    };
    let yr_id = v(yr);
    let xr = v(pairs.iter().find(|(_, b)| *b == yr).unwrap().0);
    let out = d.out_neighbors(yr_id);
    let light: BTreeSet<VertexId> = out.iter().copied().filter(|&x| d.weight(x) == 1).collect();
    let heavy: BTreeSet<VertexId> = out.iter().copied().filter(|&x| d.weight(x) >= 2).collect();

    let keep: BTreeSet<VertexId> = (0..d.vertex_count())
        .filter(|u| !light.contains(u) && *u != yr_id)
        .collect();
    let kept: Vec<VertexId> = keep.iter().copied().collect();
    let h_edges: Vec<(VertexId, VertexId)> = d
        .edges()
        .filter(|(a, b)| keep.contains(a) && keep.contains(b))
        .filter(|(_, b)| !heavy.contains(b))
        .collect();
    let local = |u: VertexId| kept.iter().position(|&k| k == u).unwrap();
    let h = WeightedOrientedGraph::new(
        kept.iter().map(|&u| d.name(u).to_string()).collect(),
        kept.iter().map(|&u| d.weight(u)).collect(),
        h_edges.iter().map(|&(a, b)| (local(a), local(b))),
    )
    .unwrap();
    let ih = edge_ideal(&h);
    let squares = MonomialIdeal::new(
        ih.registry().to_vec(),
        heavy
            .iter()
            .map(|&x| Monomial::power(ih.var(d.name(x)).unwrap(), 2)),
    )
    .unwrap();
    let l1 = ih.sum(&squares);
    let heavy_vars = heavy.iter().map(|&x| l1.var(d.name(x)).unwrap()).collect();

    let heavy_partners: BTreeSet<VertexId> = heavy.iter().map(|&x| partner_of(x)).collect();
    let mut f_vertices: Vec<VertexId> = pairs
        .iter()
        .map(|(x, _)| v(x))
        .filter(|x| !light.contains(x) && !heavy.contains(x) && *x != xr)
        .flat_map(|x| [x, partner_of(x)])
        .collect();
    f_vertices.extend(heavy.iter().copied());
    f_vertices.extend(heavy_partners.iter().copied());
    f_vertices.sort_unstable();
    let f_local = |u: VertexId| f_vertices.iter().position(|&k| k == u).unwrap();
    let mut f_edges: Vec<(VertexId, VertexId)> = h_edges.clone();
    f_edges.extend(heavy.iter().map(|&x| (x, partner_of(x))));
    let f = WeightedOrientedGraph::new(
        f_vertices.iter().map(|&u| d.name(u).to_string()).collect(),
        f_vertices
            .iter()
            .map(|&u| {
                if heavy.contains(&u) || heavy_partners.contains(&u) {
                    1
                } else {
                    d.weight(u)
                }
            })
            .collect(),
        f_edges.iter().map(|&(a, b)| (f_local(a), f_local(b))),
    )
    .unwrap();
    let partner = heavy
        .iter()
        .map(|&x| (d.name(x).to_string(), d.name(partner_of(x)).to_string()))
        .collect();
    ColonPieces {
        l1,
        heavy: heavy_vars,
        f,
        partner,
    }
}

#[test]
fn partial_polarization_of_l1_is_the_edge_ideal_of_f_for_d_bip() {
    let d = fixtures::d_bip();
    let pairs = [("x1", "y1"), ("x2", "y2"), ("x3", "y3"), ("x4", "y4")];
    let pieces = colon_pieces(&d, &pairs, "y4");

    let names = |set: &BTreeSet<Var>| -> Vec<&str> {
        set.iter()
            .map(|&v| pieces.l1.registry()[v as usize].as_str())
            .collect()
    };
    assert_eq!(names(&pieces.heavy), ["x1"]);
    let expected_l1 = MonomialIdeal::from_named(
        &["x1", "x2", "x3", "y1", "y2", "y3"],
        &[
            &[("x1", 2)],
            &[("x1", 1), ("y2", 1)],
            &[("x1", 1), ("y3", 1)],
            &[("x2", 2), ("y2", 1)],
            &[("x2", 1), ("y3", 1)],
            &[("x3", 1), ("y3", 1)],
        ],
    )
    .unwrap();
    assert!(pieces.l1.same_generators(&expected_l1));

    let polarized = partial_polarize(&pieces.l1, &pieces.heavy).unwrap();
    let rename = |n: &str| -> String {
        for (x, y) in &pieces.partner {
            if n == format!("{x}_1") {
                return x.clone();
            }
            if n == format!("{x}_2") {
                return y.clone();
            }
        }
        n.to_string()
    };
    let f_ideal = edge_ideal(&pieces.f);
    assert_eq!(
        named_generators(polarized.ideal(), rename),
        named_generators(&f_ideal, |n| n.to_string())
    );
    assert_eq!(
        pieces.f.names(),
        ["x1", "x2", "x3", "y1", "y2", "y3"]
            .map(String::from)
            .as_slice()
    );
}

#[test]
fn colon_by_y4_plus_y4_equals_colon_by_x4_y4() {
    let d = fixtures::d_bip();
    let i = edge_ideal(&d);
    let x4 = i.var("x4").unwrap();
    let y4 = i.var("y4").unwrap();
    let y4_ideal = MonomialIdeal::new(i.registry().to_vec(), [Monomial::var(y4)]).unwrap();
    let left = i.colon(&Monomial::var(y4)).sum(&y4_ideal);
    let right = i.colon(&Monomial::squarefree([x4, y4]));
    assert!(left.same_generators(&right));

    let pieces = colon_pieces(
        &d,
        &[("x1", "y1"), ("x2", "y2"), ("x3", "y3"), ("x4", "y4")],
        "y4",
    );
    let with_y4 = pieces
        .l1
        .sum(&MonomialIdeal::from_named(&["y4"], &[&[("y4", 1)]]).unwrap());
    assert!(with_y4.same_generators(&right));
}

#[test]
fn artinian_identification_holds_when_tails_are_light() {
    let family = InstanceFamily::Whiskered {
        base_sizes: (1, 3),
        weight_max: 3,
    };
    let mut checked = 0;
    for d in generate_instances(&family, GenerateOptions::default()).unwrap() {
        let matching = find_leaf_perfect_matching(&d.underlying_graph()).unwrap();
        if !whisker_violations(&d, &matching).is_empty() {
            continue;
        }
        let w = artinian_witness(&d, &matching).unwrap();
        assert!(w.matches, "{d:?}");
        assert!(w
            .image
            .same_generators(polarize_ideal(&edge_ideal(&d)).unwrap().ideal()));
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn artinian_identification_fails_for_d_path() {
    let d = fixtures::d_path();
    let matching = find_leaf_perfect_matching(&d.underlying_graph()).unwrap();
    assert!(!whisker_violations(&d, &matching).is_empty());
    assert!(!artinian_witness(&d, &matching).unwrap().matches);
}

fn primes_and_unmixedness_agree(d: &WeightedOrientedGraph, limits: &Limits) {
    let a = associated_primes(d, AssocMethod::StrongCovers, limits).unwrap();
    let b = associated_primes(d, AssocMethod::Depolarization, limits).unwrap();
    assert_eq!(a, b, "{d:?}");
    let l3 = is_unmixed(d, UnmixedMethod::StrongL3, limits)
        .unwrap()
        .unmixed;
    let heights = is_unmixed(d, UnmixedMethod::Heights, limits)
        .unwrap()
        .unmixed;
    assert_eq!(l3, heights, "{d:?}");
}

#[test]
fn prime_routes_agree_on_every_small_graph() {
    let limits = Limits::default();
    for n in 1..=4 {
        for d in all_graphs(n, 3) {
            primes_and_unmixedness_agree(&d.normalize_boundary_weights(), &limits);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prime_routes_agree_up_to_eight_vertices(d in graphs(1..=8, 3)) {
        primes_and_unmixedness_agree(&d.normalize_boundary_weights(), &Limits::default());
    }

    #[test]
    fn polarization_round_trips(i in ideals(4, 5, 4)) {
        let p = polarize_ideal(&i).unwrap();
        prop_assert!(p.ideal().is_squarefree());
        prop_assert_eq!(&p.depolarize(), &i);
        prop_assert_eq!(p.ideal().generators().len(), i.generators().len());
        for (g, h) in i.generators().iter().zip(p.ideal().generators()) {
            prop_assert_eq!(g.degree(), h.degree());
        }
    }

    #[test]
    fn partial_polarization_keeps_the_rest(i in ideals(4, 5, 3), subset in any::<u8>()) {
        let s: BTreeSet<Var> = (0..4).filter(|v| subset >> v & 1 == 1).collect();
        let p = partial_polarize(&i, &s).unwrap();
        prop_assert_eq!(&p.depolarize(), &i);
        for g in p.ideal().generators() {
            for &(v, e) in g.exponents() {
                if s.contains(&p.variable(v).base) {
                    prop_assert_eq!(e, 1);
                }
            }
        }
    }

    #[test]
    fn double_dual_is_the_identity(d in graphs(1..=8, 2)) {
        let pol = polarize_ideal(&edge_ideal(&d.normalize_boundary_weights())).unwrap();
        prop_assume!(pol.ideal().var_count() <= 16);
        let dual = alexander_dual(pol.ideal(), 24).unwrap();
        prop_assert!(alexander_dual(&dual, 24).unwrap().same_generators(pol.ideal()));
        let h = hypergraph_of(pol.ideal()).unwrap();
        let covers = h.minimal_vertex_covers(24).unwrap();
        prop_assert_eq!(covers.len(), dual.generators().len());
        for c in &covers {
            prop_assert!(h.is_cover(c));
        }
    }

    #[test]
    fn found_quotient_orders_verify(d in graphs(1..=6, 2)) {
        let pol = polarize_ideal(&edge_ideal(&d.normalize_boundary_weights())).unwrap();
        let dual = alexander_dual(pol.ideal(), 24).unwrap();
        let found = search_linear_quotients(dual.generators(), None, &Limits::default()).unwrap();
        if let Some(order) = found {
            prop_assert!(verify_linear_quotients(&order).linear);
            let mut a: Vec<_> = order.iter().map(|m| m.exponents().to_vec()).collect();
            let mut b: Vec<_> = dual.generators().iter().map(|m| m.exponents().to_vec()).collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }
}
