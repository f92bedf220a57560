use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use super::alexander_dual;
use crate::error::{Error, Result};
use crate::graph::{find_leaf_perfect_matching, LeafMatching, WeightedOrientedGraph};
use crate::ideal::{edge_ideal, Monomial, Var};
use crate::polarize::polarize_ideal;
use crate::Limits;

/// What the colon `(M_1, ..., M_{t-1}) : M_t` looks like at one position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientWitness {
    /// Generated by these variables.
    Linear(Vec<Var>),
    /// This minimal generator of the colon is not a variable.
    NotLinear(Monomial),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientCheck {
    pub linear: bool,
    /// One entry per position `t >= 2`.
    pub witnesses: Vec<QuotientWitness>,
    /// Zero-based position of the first non-linear colon.
    pub first_failure: Option<usize>,
}

/// An ordering of the generators of a dual ideal with its quotient check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualOrdering {
    pub registry: Vec<String>,
    pub generators: Vec<Monomial>,
    pub check: QuotientCheck,
    /// All generators have the same degree.
    pub pure: bool,
}

fn colon_witness(prefix: &[Monomial], m: &Monomial) -> QuotientWitness {
    let quotients: Vec<Monomial> = prefix.iter().map(|u| u.quotient_by_gcd(m)).collect();
    let mut vars: Vec<Var> = quotients
        .iter()
        .filter(|q| q.degree() == 1)
        .filter_map(Monomial::max_var)
        .collect();
    vars.sort_unstable();
    vars.dedup();
    // A quotient avoiding every linear quotient is divisible by some
    // non-variable minimal generator; the lowest-degree such quotient is one.
    let offender = quotients
        .into_iter()
        .filter(|q| q.support().all(|v| vars.binary_search(&v).is_err()))
        .min_by(|a, b| a.graded_cmp(b));
    match offender {
        Some(q) => QuotientWitness::NotLinear(q),
        None => QuotientWitness::Linear(vars),
    }
}

/// Checks that each successive colon ideal is generated by variables.
pub fn verify_linear_quotients(gens: &[Monomial]) -> QuotientCheck {
    let witnesses: Vec<QuotientWitness> = (1..gens.len())
        .map(|t| colon_witness(&gens[..t], &gens[t]))
        .collect();
    let first_failure = witnesses
        .iter()
        .position(|w| matches!(w, QuotientWitness::NotLinear(_)))
        .map(|i| i + 1);
    QuotientCheck {
        linear: first_failure.is_none(),
        witnesses,
        first_failure,
    }
}

fn is_linear_step(prefix: &[&Monomial], m: &Monomial) -> bool {
    let quotients: Vec<Monomial> = prefix.iter().map(|u| u.quotient_by_gcd(m)).collect();
    let vars: Vec<Var> = quotients
        .iter()
        .filter(|q| q.degree() == 1)
        .filter_map(Monomial::max_var)
        .collect();
    quotients
        .iter()
        .all(|q| q.support().any(|v| vars.contains(&v)))
}

/// Looks for a linear quotients ordering of `gens`. `first` is tried as
/// is; otherwise orders that never decrease in degree are searched with
/// backtracking. Running out of `limits.quotient_search_nodes` is an error.
pub fn search_linear_quotients(
    gens: &[Monomial],
    first: Option<&[Monomial]>,
    limits: &Limits,
) -> Result<Option<Vec<Monomial>>> {
    if let Some(order) = first {
        if verify_linear_quotients(order).linear {
            return Ok(Some(order.to_vec()));
        }
    }
    let mut pool: Vec<Monomial> = gens.to_vec();
    pool.sort_by(|a, b| a.graded_cmp(b));
    let mut search = Search {
        pool: &pool,
        used: vec![false; pool.len()],
        order: Vec::with_capacity(pool.len()),
        dead: HashSet::new(),
        nodes: 0,
        budget: limits.quotient_search_nodes,
    };
    if search.extend()? {
        Ok(Some(
            search.order.iter().map(|&i| pool[i].clone()).collect(),
        ))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    pool: &'a [Monomial],
    used: Vec<bool>,
    order: Vec<usize>,
    /// Sets of placed generators known not to extend. The colon at each step
    /// depends only on which generators came before, not on their order.
    dead: HashSet<Vec<bool>>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn extend(&mut self) -> Result<bool> {
        if self.order.len() == self.pool.len() {
            return Ok(true);
        }
        if self.dead.contains(&self.used) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::cap(
                "linear quotient search nodes",
                self.budget,
                self.nodes,
            ));
        }
        let min_degree = (0..self.pool.len())
            .filter(|&i| !self.used[i])
            .map(|i| self.pool[i].degree())
            .min()
            .expect("unused generator remains");
        for i in 0..self.pool.len() {
            if self.used[i] || self.pool[i].degree() != min_degree {
                continue;
            }
            let prefix: Vec<&Monomial> = self.order.iter().map(|&j| &self.pool[j]).collect();
            if !is_linear_step(&prefix, &self.pool[i]) {
                continue;
            }
            self.used[i] = true;
            self.order.push(i);
            if self.extend()? {
                return Ok(true);
            }
            self.order.pop();
            self.used[i] = false;
        }
        self.dead.insert(self.used.clone());
        Ok(false)
    }
}

/// Dual generators of `I(D)^pol` in the canonical order for a whiskered
/// graph, using the leaf matching found by
/// [`find_leaf_perfect_matching`].
pub fn canonical_dual_ordering(d: &WeightedOrientedGraph, limits: &Limits) -> Result<DualOrdering> {
    let matching =
        find_leaf_perfect_matching(&d.underlying_graph()).ok_or(Error::NoLeafMatching)?;
    canonical_dual_ordering_with(d, &matching, limits)
}

/// Matched pair, side (0 for x, 1 for y) and copy index of a polarized variable.
type VarKey = (usize, u8, u64);

/// Dual generators of `I(D)^pol` sorted by degree, then from lex-largest to
/// lex-smallest, where the variables rank
/// `x1_1 > x1_2 > ... > y1_1 > ... > x2_1 > ...` following the pair order of
/// `matching`.
pub fn canonical_dual_ordering_with(
    d: &WeightedOrientedGraph,
    matching: &LeafMatching,
    limits: &Limits,
) -> Result<DualOrdering> {
    if matching.len() * 2 != d.vertex_count() {
        return Err(Error::InvalidArgument(
            "matching does not cover every vertex".into(),
        ));
    }
    let pol = polarize_ideal(&edge_ideal(d))?;
    let dual = alexander_dual(pol.ideal(), limits.cover_vertices)?;

    let mut slot = vec![(0usize, 0u8); d.vertex_count()];
    for (i, &(x, y)) in matching.pairs.iter().enumerate() {
        slot[x] = (i, 0);
        slot[y] = (i, 1);
    }
    // smaller key = larger variable
    let key = |v: Var| {
        let pv = pol.variable(v);
        let (pair, side) = slot[pv.base as usize];
        (pair, side, pv.copy)
    };
    let keyed = |m: &Monomial| {
        let mut k: Vec<VarKey> = m.support().map(key).collect();
        k.sort_unstable();
        k
    };
    let mut gens: Vec<(Vec<VarKey>, Monomial)> = dual
        .generators()
        .iter()
        .map(|m| (keyed(m), m.clone()))
        .collect();
    gens.sort_by(|(ka, a), (kb, b)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| lex_descending(ka, kb))
    });
    let generators: Vec<Monomial> = gens.into_iter().map(|(_, m)| m).collect();
    let pure = generators
        .windows(2)
        .all(|w| w[0].degree() == w[1].degree());
    Ok(DualOrdering {
        registry: pol.ideal().registry().to_vec(),
        check: verify_linear_quotients(&generators),
        generators,
        pure,
    })
}

/// `Less` when the monomial with sorted variable keys `a` is lex-larger.
fn lex_descending<K: Ord>(a: &[K], b: &[K]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            // the side holding the larger variable (smaller key) is larger
            return x.cmp(y);
        }
    }
    // the monomial with extra variables is larger
    b.len().cmp(&a.len())
}
