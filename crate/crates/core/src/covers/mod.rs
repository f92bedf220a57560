//! Hypergraph transversals, Alexander duality, strong vertex covers,
//! associated primes and linear quotients.

mod quotients;
mod strong;

pub use quotients::{
    canonical_dual_ordering, canonical_dual_ordering_with, search_linear_quotients,
    verify_linear_quotients, DualOrdering, QuotientCheck, QuotientWitness,
};
pub use strong::{
    associated_primes, is_unmixed, strong_vertex_covers, AssocMethod, CoverPartition,
    UnmixedCertificate, UnmixedMethod, UnmixedReport,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{Monomial, MonomialIdeal, Var};

/// Vertex sets are handled as bitmasks internally, which bounds every cap.
pub(crate) const MASK_BITS: usize = 64;

pub(crate) fn mask_of(vars: impl IntoIterator<Item = usize>) -> u64 {
    vars.into_iter().fold(0, |m, v| m | (1u64 << v))
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Orders vertex sets by size, then lexicographically by sorted members.
pub(crate) fn sort_sets(sets: &mut [Vec<usize>]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// A simple hypergraph: no edge contains another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, dropping duplicate edges and edges that contain
    /// another edge.
    pub fn new(vertices: Vec<String>, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut all: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        if let Some(&bad) = all.iter().flatten().find(|&&v| v >= vertices.len()) {
            return Err(Error::InvalidArgument(format!(
                "edge vertex {bad} out of range"
            )));
        }
        sort_sets(&mut all);
        all.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for e in all {
            if !kept
                .iter()
                .any(|k| k.iter().all(|v| e.binary_search(v).is_ok()))
            {
                kept.push(e);
            }
        }
        Ok(Hypergraph {
            vertices,
            edges: kept,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_cover(&self, set: &[usize]) -> bool {
        self.edges.iter().all(|e| e.iter().any(|v| set.contains(v)))
    }

    /// All inclusion-minimal vertex covers, ordered by size and then
    /// lexicographically.
    pub fn minimal_vertex_covers(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let cap = cap.min(MASK_BITS);
        if self.vertex_count() > cap {
            return Err(Error::cap("hypergraph vertices", cap, self.vertex_count()));
        }
        let masks: Vec<u64> = self
            .edges
            .iter()
            .map(|e| mask_of(e.iter().copied()))
            .collect();
        let mut found = Vec::new();
        if masks.contains(&0) {
            // The unit ideal: the empty edge can never be met.
            return Ok(Vec::new());
        }
        enumerate_covers(&masks, 0, 0, &mut found);
        let mut sets: Vec<Vec<usize>> = found.into_iter().map(|m| bits(m).collect()).collect();
        sort_sets(&mut sets);
        Ok(sets)
    }
}

fn has_private_edges(edges: &[u64], chosen: u64) -> bool {
    bits(chosen).all(|v| edges.iter().any(|&e| e & chosen == 1u64 << v))
}

fn enumerate_covers(edges: &[u64], chosen: u64, excluded: u64, out: &mut Vec<u64>) {
    let Some(&edge) = edges.iter().find(|&&e| e & chosen == 0) else {
        out.push(chosen);
        return;
    };
    let mut excluded = excluded;
    for v in bits(edge & !excluded) {
        let next = chosen | 1u64 << v;
        // Adding vertices only removes private edges, so a vertex that lost
        // all of them stays redundant in every extension.
        if has_private_edges(edges, next) {
            enumerate_covers(edges, next, excluded, out);
        }
        excluded |= 1u64 << v;
    }
}

/// The hypergraph whose edges are the supports of the generators.
pub fn hypergraph_of(ideal: &MonomialIdeal) -> Result<Hypergraph> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Hypergraph::new(
        ideal.registry().to_vec(),
        ideal
            .generators()
            .iter()
            .map(|g| g.support().map(|v| v as usize).collect()),
    )
}

pub fn minimal_vertex_covers(h: &Hypergraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    h.minimal_vertex_covers(cap)
}

/// Generated by the products over the minimal vertex covers of the ideal's
/// hypergraph.
pub fn alexander_dual(ideal: &MonomialIdeal, cap: usize) -> Result<MonomialIdeal> {
    let covers = hypergraph_of(ideal)?.minimal_vertex_covers(cap)?;
    Ok(MonomialIdeal::new_unchecked(
        ideal.registry().to_vec(),
        covers
            .into_iter()
            .map(|c| Monomial::squarefree(c.into_iter().map(|v| v as Var))),
    ))
}
