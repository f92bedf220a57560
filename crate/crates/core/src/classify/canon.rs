//! Canonical forms of small weighted oriented graphs, for deduplicating
//! instance streams up to isomorphism.
//!
//! Vertices are first split into classes by colour refinement, which only
//! ever separates vertices no isomorphism can swap. The canonical form is
//! then the smallest encoding over all relabelings that keep the classes in
//! order, so only permutations inside each class are tried.

use crate::error::{Error, Result};
use crate::graph::WeightedOrientedGraph;

/// Largest vertex count accepted by [`canonical_form`].
pub const CANON_MAX_VERTICES: usize = 8;

/// An isomorphism-invariant encoding: vertex count, weights in canonical
/// order, then the adjacency matrix row by row as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    weights: Vec<u64>,
    adjacency: u64,
}

fn refine(d: &WeightedOrientedGraph) -> Vec<usize> {
    let n = d.vertex_count();
    let mut colour: Vec<usize> = {
        let keys: Vec<(u64, usize, usize)> = (0..n)
            .map(|v| {
                (
                    d.weight(v),
                    d.out_neighbors(v).len(),
                    d.in_neighbors(v).len(),
                )
            })
            .collect();
        dense_ranks(&keys)
    };
    loop {
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut out: Vec<usize> = d.out_neighbors(v).iter().map(|&w| colour[w]).collect();
                let mut inn: Vec<usize> = d.in_neighbors(v).iter().map(|&w| colour[w]).collect();
                out.sort_unstable();
                inn.sort_unstable();
                (colour[v], out, inn)
            })
            .collect();
        let next = dense_ranks(&keys);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

/// Replaces each key by its rank among the distinct keys.
fn dense_ranks<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present"))
        .collect()
}

fn encode(d: &WeightedOrientedGraph, position: &[usize]) -> CanonicalForm {
    let n = d.vertex_count();
    let mut weights = vec![0; n];
    for v in 0..n {
        weights[position[v]] = d.weight(v);
    }
    let adjacency = d
        .edges()
        .fold(0u64, |m, (u, v)| m | 1 << (position[u] * n + position[v]));
    CanonicalForm { weights, adjacency }
}

/// Canonical form of a graph with at most [`CANON_MAX_VERTICES`] vertices.
/// Two graphs get equal forms exactly when they are isomorphic as weighted
/// oriented graphs.
pub fn canonical_form(d: &WeightedOrientedGraph) -> Result<CanonicalForm> {
    let n = d.vertex_count();
    if n > CANON_MAX_VERTICES {
        return Err(Error::cap(
            "vertices for canonical forms",
            CANON_MAX_VERTICES,
            n,
        ));
    }
    let colour = refine(d);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); colour.iter().max().map_or(0, |m| m + 1)];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    let mut position = vec![0; n];
    let mut best: Option<CanonicalForm> = None;
    place(d, &mut cells, 0, 0, &mut position, &mut best);
    Ok(best.unwrap_or(CanonicalForm {
        weights: Vec::new(),
        adjacency: 0,
    }))
}

/// Tries every arrangement of the cells from `cell` on, positions starting
/// at `next`.
fn place(
    d: &WeightedOrientedGraph,
    cells: &mut [Vec<usize>],
    cell: usize,
    next: usize,
    position: &mut [usize],
    best: &mut Option<CanonicalForm>,
) {
    if cell == cells.len() {
        let form = encode(d, position);
        if best.as_ref().is_none_or(|b| form < *b) {
            *best = Some(form);
        }
        return;
    }
    permute(d, cells, cell, 0, next, position, best);
}

fn permute(
    d: &WeightedOrientedGraph,
    cells: &mut [Vec<usize>],
    cell: usize,
    k: usize,
    next: usize,
    position: &mut [usize],
    best: &mut Option<CanonicalForm>,
) {
    let len = cells[cell].len();
    if k == len {
        for (i, &v) in cells[cell].iter().enumerate() {
            position[v] = next + i;
        }
        place(d, cells, cell + 1, next + len, position, best);
        return;
    }
    for i in k..len {
        cells[cell].swap(k, i);
        permute(d, cells, cell, k + 1, next, position, best);
        cells[cell].swap(k, i);
    }
}
