#![allow(dead_code)]

use std::collections::BTreeSet;

use edgeideal::graph::WeightedOrientedGraph;
use edgeideal::ideal::{Monomial, MonomialIdeal};
use proptest::prelude::*;

/// Graphs on `v1..vn` for `n` in `vertices`: every pair is absent, forward
/// or backward, and every weight lies in `1..=weight_max`.
pub fn graphs(
    vertices: std::ops::RangeInclusive<usize>,
    weight_max: u64,
) -> impl Strategy<Value = WeightedOrientedGraph> {
    vertices
        .prop_flat_map(move |n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (
                Just(n),
                prop::collection::vec(0u8..3, pairs),
                prop::collection::vec(1..=weight_max, n),
            )
        })
        .prop_map(|(n, orient, weights)| build(n, &orient, weights))
}

fn build(n: usize, orient: &[u8], weights: Vec<u64>) -> WeightedOrientedGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            match orient[k] {
                1 => edges.push((i, j)),
                2 => edges.push((j, i)),
                _ => {}
            }
            k += 1;
        }
    }
    let names = (1..=n).map(|i| format!("v{i}")).collect();
    WeightedOrientedGraph::new(names, weights, edges).expect("valid by construction")
}

/// Every graph on `n` vertices with weights in `1..=weight_max`.
pub fn all_graphs(n: usize, weight_max: u64) -> Vec<WeightedOrientedGraph> {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut out = Vec::new();
    for code in 0..3usize.pow(pairs as u32) {
        let orient: Vec<u8> = (0..pairs)
            .map(|k| (code / 3usize.pow(k as u32) % 3) as u8)
            .collect();
        for wcode in 0..(weight_max as usize).pow(n as u32) {
            let weights = (0..n)
                .map(|k| {
                    (wcode / (weight_max as usize).pow(k as u32) % weight_max as usize) as u64 + 1
                })
                .collect();
            out.push(build(n, &orient, weights));
        }
    }
    out
}

/// Monomials over the first `vars` variables with exponents up to `max_exp`.
pub fn monomial(vars: u32, max_exp: u64) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, vars as usize)
        .prop_map(|e| Monomial::from_pairs(e.into_iter().enumerate().map(|(v, e)| (v as u32, e))))
}

/// Monomial ideals over `x1..x{vars}` with up to `gens` generators.
pub fn ideals(vars: u32, gens: usize, max_exp: u64) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(monomial(vars, max_exp), 0..=gens).prop_map(move |g| {
        let registry = (1..=vars).map(|i| format!("x{i}")).collect();
        MonomialIdeal::new(registry, g.into_iter().filter(|m| !m.is_one()))
            .expect("registry covers every variable")
    })
}

/// Generators as sorted `(name, exponent)` lists after renaming variables.
pub fn named_generators(
    ideal: &MonomialIdeal,
    rename: impl Fn(&str) -> String,
) -> BTreeSet<Vec<(String, u64)>> {
    ideal
        .generators()
        .iter()
        .map(|g| {
            let mut v: Vec<(String, u64)> = g
                .exponents()
                .iter()
                .map(|&(x, e)| (rename(&ideal.registry()[x as usize]), e))
                .collect();
            v.sort();
            v
        })
        .collect()
}
