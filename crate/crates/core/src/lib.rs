//! Monomial edge ideals built from vertex-weighted directed graphs.
//!
//! The crate builds the edge ideal `I(D)` of a weighted oriented graph,
//! polarizes it, enumerates minimal and strong vertex covers, computes
//! associated primes two ways, and decides unmixedness and the
//! Cohen-Macaulay property for whiskered and bipartite graphs. Every
//! decision can be re-checked with an exact simplicial homology oracle in
//! [`oracle`].
//!
//! ```
//! use edgeideal::{fixtures, ideal::edge_ideal, ideal::render_ideal};
//!
//! let i = edge_ideal(&fixtures::d_path());
//! assert_eq!(render_ideal(&i), "# ring: x1 x2 y1 y2\nx2*y2\nx1^2*y1\nx1*x2^3\n");
//! ```

pub mod classify;
pub mod covers;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ideal;
pub mod oracle;
pub mod polarize;

pub use error::{Error, Result};

use serde::Serialize;

/// Size caps shared by the enumerations. Exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Vertices of a hypergraph whose minimal covers are enumerated.
    pub cover_vertices: usize,
    /// Vertices of a graph whose strong covers are enumerated.
    pub strong_cover_vertices: usize,
    /// Faces of a simplicial complex handed to the homology routines.
    pub faces: usize,
    /// Matched pairs searched for a bipartite ordering.
    pub matching_pairs: usize,
    /// Search nodes for the linear-quotient ordering search.
    pub quotient_search_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cover_vertices: 24,
            strong_cover_vertices: 22,
            faces: 1 << 20,
            matching_pairs: 12,
            quotient_search_nodes: 200_000,
        }
    }
}
