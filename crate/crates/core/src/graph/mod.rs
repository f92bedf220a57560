//! Vertex-weighted oriented graphs and their underlying simple graphs.
//!
//! Vertices carry string names but are addressed everywhere by their dense
//! index, assigned in insertion order. All orderings and tie-breaks in the
//! crate derive from that index.

mod matching;
mod parse;

pub use matching::{
    bipartition, cm_matching_orders, find_cm_matching_order, find_leaf_perfect_matching,
    perfect_matching_orders, Bipartition, CmOrdering, LeafMatching, MatchingOrderCheck,
};
pub(crate) use parse::validate_name;
pub use parse::{parse_graph, render_graph, ParseOptions, ParsedGraph};

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A simple graph with one orientation per edge and a weight `>= 1` on every
/// vertex.
#[derive(Clone, Debug, Serialize)]
pub struct WeightedOrientedGraph {
    names: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, VertexId>,
    weights: Vec<u64>,
    edges: BTreeSet<(VertexId, VertexId)>,
    #[serde(skip)]
    out_adj: Vec<BTreeSet<VertexId>>,
    #[serde(skip)]
    in_adj: Vec<BTreeSet<VertexId>>,
}

impl PartialEq for WeightedOrientedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.weights == other.weights && self.edges == other.edges
    }
}

impl Eq for WeightedOrientedGraph {}

impl WeightedOrientedGraph {
    /// Builds a graph from vertex names, weights and directed edges `(from, to)`.
    ///
    /// Rejects loops, repeated edges, anti-parallel pairs, zero weights and
    /// duplicate names.
    pub fn new(
        names: Vec<String>,
        weights: Vec<u64>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::InvalidGraph(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidGraph("empty vertex name".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidGraph(format!(
                "vertex `{}` has weight 0; weights must be at least 1",
                names[i]
            )));
        }
        let n = names.len();
        let mut set = BTreeSet::new();
        let mut out_adj = vec![BTreeSet::new(); n];
        let mut in_adj = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at `{}`", names[u])));
            }
            if set.contains(&(v, u)) {
                return Err(Error::InvalidGraph(format!(
                    "anti-parallel edges between `{}` and `{}`",
                    names[u], names[v]
                )));
            }
            if !set.insert((u, v)) {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge ({}, {})",
                    names[u], names[v]
                )));
            }
            out_adj[u].insert(v);
            in_adj[v].insert(u);
        }
        Ok(WeightedOrientedGraph {
            names,
            index,
            weights,
            edges: set,
            out_adj,
            in_adj,
        })
    }

    /// Convenience constructor from `(name, weight)` pairs and named edges.
    pub fn from_named(vertices: &[(&str, u64)], edges: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|(n, _)| n.to_string()).collect();
        let weights = vertices.iter().map(|&(_, w)| w).collect();
        let lookup = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::UnknownVertex(s.to_string()))
        };
        let mut e = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            e.push((lookup(a)?, lookup(b)?));
        }
        Self::new(names, weights, e)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, v: VertexId) -> u64 {
        self.weights[v]
    }

    /// Directed edges in `(from, to)` order, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn out_neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.in_adj[v]
    }

    /// Out- and in-neighborhood of the named vertex.
    pub fn neighborhoods(&self, name: &str) -> Result<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
        let v = self.vertex(name)?;
        Ok((self.out_adj[v].clone(), self.in_adj[v].clone()))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    /// A non-isolated vertex without in-neighbors.
    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_adj[v].is_empty() && !self.out_adj[v].is_empty()
    }

    /// A non-isolated vertex without out-neighbors.
    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_adj[v].is_empty() && !self.in_adj[v].is_empty()
    }

    pub fn underlying_graph(&self) -> UndirectedGraph {
        let mut adj = vec![BTreeSet::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        UndirectedGraph {
            names: self.names.clone(),
            adj,
        }
    }

    /// Resets the weight of every source and sink to 1.
    pub fn normalize_boundary_weights(&self) -> WeightedOrientedGraph {
        let mut g = self.clone();
        for v in 0..g.vertex_count() {
            if g.is_source(v) || g.is_sink(v) {
                g.weights[v] = 1;
            }
        }
        g
    }

    /// Sources and sinks whose weight is not 1.
    pub fn boundary_weight_violations(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| (self.is_source(v) || self.is_sink(v)) && self.weights[v] != 1)
            .collect()
    }

    /// Returns a copy with one vertex weight changed.
    pub fn with_weight(&self, v: VertexId, weight: u64) -> Result<WeightedOrientedGraph> {
        if weight == 0 {
            return Err(Error::InvalidGraph("weights must be at least 1".into()));
        }
        let mut g = self.clone();
        g.weights[v] = weight;
        Ok(g)
    }

    /// Returns a copy with the edge `(u, v)` replaced by `(v, u)`.
    pub fn with_reversed_edge(&self, u: VertexId, v: VertexId) -> Result<WeightedOrientedGraph> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!(
                "no edge ({}, {}) to reverse",
                self.names[u], self.names[v]
            )));
        }
        let edges = self
            .edges
            .iter()
            .map(|&e| if e == (u, v) { (v, u) } else { e });
        WeightedOrientedGraph::new(self.names.clone(), self.weights.clone(), edges)
    }

    /// Induced subgraph on the given vertices, keeping their relative order.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<WeightedOrientedGraph> {
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(Error::InvalidGraph(format!(
                "vertex index {bad} out of range"
            )));
        }
        let order: Vec<VertexId> = keep.iter().copied().collect();
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            new_index[v] = i;
        }
        let names = order.iter().map(|&v| self.names[v].clone()).collect();
        let weights = order.iter().map(|&v| self.weights[v]).collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_index[u], new_index[v]))
            .collect();
        WeightedOrientedGraph::new(names, weights, edges)
    }

    /// Induced subgraph on named vertices.
    pub fn induced_subgraph_named(&self, names: &[&str]) -> Result<WeightedOrientedGraph> {
        let mut keep = BTreeSet::new();
        for n in names {
            keep.insert(self.vertex(n)?);
        }
        self.induced_subgraph(&keep)
    }
}

/// Undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    names: Vec<String>,
    adj: Vec<BTreeSet<VertexId>>,
}

impl UndirectedGraph {
    pub fn new(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u},{v}}} out of range"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at `{}`", names[u])));
            }
            if !adj[u].insert(v) {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge {{{}, {}}}",
                    names[u], names[v]
                )));
            }
            adj[v].insert(u);
        }
        Ok(UndirectedGraph { names, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> UndirectedGraph {
        let order: Vec<VertexId> = keep.iter().copied().collect();
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            new_index[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|w| keep.contains(w))
                    .map(|&w| new_index[w])
                    .collect()
            })
            .collect();
        UndirectedGraph {
            names: order.iter().map(|&v| self.names[v].clone()).collect(),
            adj,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(g: &WeightedOrientedGraph, names: &[&str]) -> BTreeSet<VertexId> {
        names.iter().map(|n| g.vertex(n).unwrap()).collect()
    }

    #[test]
    fn underlying_graph_of_path() {
        let d = fixtures::d_path();
        let g = d.underlying_graph();
        let named: Vec<(&str, &str)> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (g.names()[u].as_str(), g.names()[v].as_str()))
            .collect();
        assert_eq!(named, vec![("x1", "x2"), ("x1", "y1"), ("x2", "y2")]);
    }

    #[test]
    fn underlying_graph_edge_counts() {
        let empty = WeightedOrientedGraph::from_named(&[("a", 1), ("b", 1)], &[]).unwrap();
        assert_eq!(empty.underlying_graph().edge_count(), 0);
        assert_eq!(fixtures::d_bip().underlying_graph().edge_count(), 8);
    }

    #[test]
    fn neighborhoods_follow_orientation() {
        let d = fixtures::d_path();
        let (out, inn) = d.neighborhoods("x1").unwrap();
        assert_eq!(out, set(&d, &["x2"]));
        assert_eq!(inn, set(&d, &["y1"]));
        let (out, inn) = d.neighborhoods("y1").unwrap();
        assert_eq!(out, set(&d, &["x1"]));
        assert!(inn.is_empty());
        assert!(matches!(
            d.neighborhoods("zz"),
            Err(Error::UnknownVertex(_))
        ));

        let iso = WeightedOrientedGraph::from_named(&[("a", 1)], &[]).unwrap();
        let (out, inn) = iso.neighborhoods("a").unwrap();
        assert!(out.is_empty() && inn.is_empty());
    }

    #[test]
    fn rejects_malformed_graphs() {
        let loops = WeightedOrientedGraph::from_named(&[("a", 1)], &[("a", "a")]);
        assert!(matches!(loops, Err(Error::InvalidGraph(_))));
        let anti =
            WeightedOrientedGraph::from_named(&[("a", 1), ("b", 1)], &[("a", "b"), ("b", "a")]);
        assert!(matches!(anti, Err(Error::InvalidGraph(_))));
        let rep =
            WeightedOrientedGraph::from_named(&[("a", 1), ("b", 1)], &[("a", "b"), ("a", "b")]);
        assert!(matches!(rep, Err(Error::InvalidGraph(_))));
        let zero = WeightedOrientedGraph::from_named(&[("a", 0)], &[]);
        assert!(matches!(zero, Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn boundary_weight_normalization() {
        let d = fixtures::d_path();
        assert_eq!(d.normalize_boundary_weights(), d);

        let y2 = d.vertex("y2").unwrap();
        let heavy_sink = d.with_weight(y2, 5).unwrap();
        assert_eq!(heavy_sink.normalize_boundary_weights(), d);

        let single =
            WeightedOrientedGraph::from_named(&[("a", 3), ("b", 4)], &[("a", "b")]).unwrap();
        assert_eq!(single.normalize_boundary_weights().weights(), &[1, 1]);
    }

    #[test]
    fn induced_subgraphs() {
        let d = fixtures::d_path();
        let sub = d.induced_subgraph_named(&["x1", "x2"]).unwrap();
        assert_eq!(sub.names(), &["x1", "x2"]);
        assert_eq!(sub.weights(), &[2, 3]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1)]);

        let empty = d.induced_subgraph(&BTreeSet::new()).unwrap();
        assert_eq!(empty.vertex_count(), 0);

        assert!(d.induced_subgraph_named(&["x1", "nope"]).is_err());
        assert!(d.induced_subgraph(&[17].into_iter().collect()).is_err());

        let fig2 = fixtures::d_fig2();
        let rest = fig2
            .induced_subgraph_named(&["x2", "x3", "x4", "y2", "y3", "y4"])
            .unwrap();
        // Drops the edges (x1,y1), (x2,x1), (x1,x4).
        assert_eq!(rest.edge_count(), 6);
    }
}
