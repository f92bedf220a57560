//! Instance streams for the sweeps: every whiskered or bipartite graph up to
//! a size, or seeded random graphs.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedOrientedGraph};

/// Which graphs to produce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum InstanceFamily {
    /// A base graph on `x1..xn` for every `n` in `base_sizes`, with a whisker
    /// `y_i` hung on every `x_i`. All base graphs, all orientations of base
    /// and whisker edges, all weights up to `weight_max`.
    Whiskered {
        base_sizes: (usize, usize),
        weight_max: u64,
    },
    /// Bipartite graphs between `x1..xa` and `y1..yb` without isolated
    /// vertices, for every `a` in `x_sizes` and `b` in `y_sizes`.
    Bipartite {
        x_sizes: (usize, usize),
        y_sizes: (usize, usize),
        weight_max: u64,
    },
    /// `count` graphs on `v1..vn` with `n` drawn from `vertices`; each pair is
    /// an edge with probability `edge_percent`/100, oriented by a coin flip,
    /// with weights drawn uniformly from `1..=weight_max`.
    Random {
        seed: u64,
        count: usize,
        vertices: (usize, usize),
        weight_max: u64,
        edge_percent: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenerateOptions {
    /// Reset sources and sinks to weight 1, and vary weights only on the
    /// other vertices. Without it, weights vary on every vertex with an
    /// in-neighbor (the only ones that reach the edge ideal).
    pub normalize: bool,
    /// Keep one graph per isomorphism class (exhaustive families only).
    pub dedupe: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            normalize: true,
            dedupe: true,
        }
    }
}

/// Upper bound on the number of graphs an exhaustive family may enumerate
/// before deduplication.
pub const GENERATION_CAP: usize = 1 << 24;

pub fn generate_instances(
    family: &InstanceFamily,
    opts: GenerateOptions,
) -> Result<Vec<WeightedOrientedGraph>> {
    match *family {
        InstanceFamily::Whiskered {
            base_sizes,
            weight_max,
        } => {
            check_weight_cap(weight_max)?;
            let mut shapes = Vec::new();
            for n in base_sizes.0..=base_sizes.1 {
                whiskered_shapes(n, &mut shapes)?;
            }
            weighted(shapes, weight_max, opts)
        }
        InstanceFamily::Bipartite {
            x_sizes,
            y_sizes,
            weight_max,
        } => {
            check_weight_cap(weight_max)?;
            let mut shapes = Vec::new();
            for a in x_sizes.0.max(1)..=x_sizes.1 {
                for b in y_sizes.0.max(1)..=y_sizes.1 {
                    bipartite_shapes(a, b, &mut shapes)?;
                }
            }
            weighted(shapes, weight_max, opts)
        }
        InstanceFamily::Random {
            seed,
            count,
            vertices,
            weight_max,
            edge_percent,
        } => {
            check_weight_cap(weight_max)?;
            if vertices.0 > vertices.1 || edge_percent > 100 {
                return Err(Error::InvalidArgument(
                    "empty vertex range or edge percentage above 100".into(),
                ));
            }
            Ok(random_graphs(
                seed,
                count,
                vertices,
                weight_max,
                edge_percent,
                opts.normalize,
            ))
        }
    }
}

fn check_weight_cap(weight_max: u64) -> Result<()> {
    if weight_max == 0 {
        return Err(Error::InvalidArgument(
            "weight cap must be at least 1".into(),
        ));
    }
    Ok(())
}

fn names(prefix: char, n: usize) -> impl Iterator<Item = String> {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

/// An unweighted oriented graph: vertex names and edges.
struct Shape {
    names: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
}

fn push_shape(out: &mut Vec<Shape>, shape: Shape) -> Result<()> {
    if out.len() >= GENERATION_CAP {
        return Err(Error::cap(
            "generated graphs",
            GENERATION_CAP,
            out.len() + 1,
        ));
    }
    out.push(shape);
    Ok(())
}

/// Every orientation of `undirected`, as edge lists.
fn orientations(
    undirected: &[(VertexId, VertexId)],
) -> impl Iterator<Item = Vec<(VertexId, VertexId)>> + '_ {
    (0u64..1 << undirected.len()).map(move |mask| {
        undirected
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) })
            .collect()
    })
}

fn whiskered_shapes(n: usize, out: &mut Vec<Shape>) -> Result<()> {
    // vertices: x1..xn are 0..n, y1..yn are n..2n
    let vertex_names: Vec<String> = names('x', n).chain(names('y', n)).collect();
    let pairs: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for subset in 0u64..1 << pairs.len() {
        let mut undirected: Vec<(VertexId, VertexId)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| subset >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        undirected.extend((0..n).map(|i| (i, n + i)));
        for edges in orientations(&undirected) {
            push_shape(
                out,
                Shape {
                    names: vertex_names.clone(),
                    edges,
                },
            )?;
        }
    }
    Ok(())
}

fn bipartite_shapes(a: usize, b: usize, out: &mut Vec<Shape>) -> Result<()> {
    let vertex_names: Vec<String> = names('x', a).chain(names('y', b)).collect();
    let pairs: Vec<(VertexId, VertexId)> = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, a + j)))
        .collect();
    for subset in 0u64..1 << pairs.len() {
        let undirected: Vec<(VertexId, VertexId)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| subset >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let mut touched = vec![false; a + b];
        for &(u, v) in &undirected {
            touched[u] = true;
            touched[v] = true;
        }
        if touched.contains(&false) {
            continue;
        }
        for edges in orientations(&undirected) {
            push_shape(
                out,
                Shape {
                    names: vertex_names.clone(),
                    edges,
                },
            )?;
        }
    }
    Ok(())
}

/// Attaches every weight assignment to every shape. With deduplication the
/// shapes are reduced to isomorphism classes first: an isomorphism of
/// weighted graphs is one of the unweighted shapes, so one representative
/// per shape class still reaches every weighted class.
fn weighted(
    shapes: Vec<Shape>,
    weight_max: u64,
    opts: GenerateOptions,
) -> Result<Vec<WeightedOrientedGraph>> {
    let mut out = Vec::new();
    let mut seen_shapes = HashSet::new();
    let mut seen = HashSet::new();
    for shape in shapes {
        let n = shape.names.len();
        let base = WeightedOrientedGraph::new(shape.names, vec![1; n], shape.edges)?;
        if opts.dedupe && !seen_shapes.insert(canonical_form(&base)?) {
            continue;
        }
        let free: Vec<VertexId> = (0..n)
            .filter(|&v| {
                let has_in = !base.in_neighbors(v).is_empty();
                if opts.normalize {
                    has_in && !base.out_neighbors(v).is_empty()
                } else {
                    has_in
                }
            })
            .collect();
        let choices = weight_max
            .checked_pow(free.len() as u32)
            .unwrap_or(u64::MAX);
        if choices > GENERATION_CAP as u64 {
            return Err(Error::cap(
                "weight assignments per graph",
                GENERATION_CAP,
                choices as usize,
            ));
        }
        for code in 0..choices {
            let mut weights = vec![1; n];
            let mut rest = code;
            for &v in &free {
                weights[v] = rest % weight_max + 1;
                rest /= weight_max;
            }
            let g = WeightedOrientedGraph::new(base.names().to_vec(), weights, base.edges())?;
            if opts.dedupe && !seen.insert(canonical_form(&g)?) {
                continue;
            }
            out.push(g);
        }
    }
    Ok(out)
}

fn random_graphs(
    seed: u64,
    count: usize,
    vertices: (usize, usize),
    weight_max: u64,
    edge_percent: u32,
    normalize: bool,
) -> Vec<WeightedOrientedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(vertices.0..=vertices.1);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_ratio(edge_percent, 100) {
                        edges.push(if rng.gen_bool(0.5) { (i, j) } else { (j, i) });
                    }
                }
            }
            let weights = (0..n).map(|_| rng.gen_range(1..=weight_max)).collect();
            let g = WeightedOrientedGraph::new(names('v', n).collect(), weights, edges)
                .expect("generated edges are simple");
            if normalize {
                g.normalize_boundary_weights()
            } else {
                g
            }
        })
        .collect()
}
