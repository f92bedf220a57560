//! Reference graphs used throughout the tests and documentation.

use crate::graph::{parse_graph, ParseOptions, WeightedOrientedGraph};

/// Path `y1 -> x1 -> x2 -> y2` with `w(x1) = 2`, `w(x2) = 3`.
pub const D_PATH_TEXT: &str = include_str!("../fixtures/d_path.graph");
/// Whiskered graph on `x1..x4, y1..y4` violating the whisker-tail weight
/// condition only at `x1`.
pub const D_FIG2_TEXT: &str = include_str!("../fixtures/d_fig2.graph");
/// Cohen-Macaulay bipartite graph on `x1..x4 | y1..y4`.
pub const D_BIP_TEXT: &str = include_str!("../fixtures/d_bip.graph");

fn load(text: &str) -> WeightedOrientedGraph {
    parse_graph(text, ParseOptions::default())
        .expect("bundled fixture parses")
        .graph
}

pub fn d_path() -> WeightedOrientedGraph {
    load(D_PATH_TEXT)
}

pub fn d_fig2() -> WeightedOrientedGraph {
    load(D_FIG2_TEXT)
}

pub fn d_bip() -> WeightedOrientedGraph {
    load(D_BIP_TEXT)
}
