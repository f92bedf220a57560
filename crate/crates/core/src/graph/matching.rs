use std::collections::VecDeque;

use serde::Serialize;

use super::{UndirectedGraph, VertexId};
use crate::error::{Error, Result};

/// A perfect matching `{x_i, y_i}` of the underlying graph in which each
/// `y_i` is a leaf. Pairs are stored as `(x_i, y_i)`, sorted by `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeafMatching {
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl LeafMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Moves pair `i` to the front, keeping the others in order.
    pub fn with_first(&self, i: usize) -> LeafMatching {
        let mut pairs = self.pairs.clone();
        let p = pairs.remove(i);
        pairs.insert(0, p);
        LeafMatching { pairs }
    }
}

/// Pairs every leaf with its unique neighbour. Fails when a neighbour is
/// claimed twice or some vertex is left over. A component that is a single
/// edge uses its lower-indexed endpoint as `x`.
pub fn find_leaf_perfect_matching(g: &UndirectedGraph) -> Option<LeafMatching> {
    let n = g.vertex_count();
    let mut matched = vec![false; n];
    let mut pairs = Vec::new();
    for v in 0..n {
        if g.degree(v) != 1 {
            continue;
        }
        let u = *g.neighbors(v).iter().next().unwrap();
        if g.degree(u) == 1 {
            if v < u {
                matched[u] = true;
                matched[v] = true;
                pairs.push((v, u));
            }
            continue;
        }
        if matched[u] {
            return None;
        }
        matched[u] = true;
        matched[v] = true;
        pairs.push((u, v));
    }
    if matched.iter().any(|m| !m) {
        return None;
    }
    pairs.sort_unstable();
    Some(LeafMatching { pairs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub side_x: Vec<VertexId>,
    pub side_y: Vec<VertexId>,
}

/// Two-colours the graph by breadth-first search. The lowest-indexed vertex
/// of each component lands in `side_x`.
pub fn bipartition(g: &UndirectedGraph) -> Result<Bipartition> {
    let n = g.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &w in g.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return Err(Error::NotBipartite),
                    _ => {}
                }
            }
        }
    }
    let (mut side_x, mut side_y) = (Vec::new(), Vec::new());
    for (v, c) in color.into_iter().enumerate() {
        if c == Some(false) {
            side_x.push(v);
        } else {
            side_y.push(v);
        }
    }
    Ok(Bipartition { side_x, side_y })
}

/// A perfect matching of a bipartite graph listed in an order where
/// `{x_i, y_j}` adjacent implies `i <= j`, and the forward adjacency between
/// pairs is transitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmOrdering {
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl CmOrdering {
    /// Matched partner of each vertex.
    pub fn partners(&self, n: usize) -> Vec<Option<VertexId>> {
        let mut p = vec![None; n];
        for &(x, y) in &self.pairs {
            p[x] = Some(y);
            p[y] = Some(x);
        }
        p
    }
}

/// How one perfect matching fares against the ordering conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingOrderCheck {
    /// The pairs in an order meeting both conditions.
    Admissible(CmOrdering),
    /// The forward relation between pairs has a cycle, so no order puts
    /// every edge `{x_i, y_j}` at `i <= j`. The two pairs start the cycle.
    Cyclic {
        pairs: Vec<(VertexId, VertexId)>,
        first: (VertexId, VertexId),
        second: (VertexId, VertexId),
    },
    /// Acyclic, but `x_i ~ y_j` and `x_j ~ y_k` without `x_i ~ y_k`.
    Intransitive {
        pairs: Vec<(VertexId, VertexId)>,
        triple: [(VertexId, VertexId); 3],
    },
}

/// Every perfect matching of the bipartite graph `g`, each checked against
/// the ordering conditions. Matchings are enumerated by assigning partners to
/// the `x` side in index order.
pub fn perfect_matching_orders(
    g: &UndirectedGraph,
    max_pairs: usize,
) -> Result<Vec<MatchingOrderCheck>> {
    let bip = bipartition(g)?;
    if bip.side_x.len() != bip.side_y.len() {
        return Ok(Vec::new());
    }
    let r = bip.side_x.len();
    if r > max_pairs {
        return Err(Error::cap("matched pairs", max_pairs, r));
    }
    let mut found = Vec::new();
    let mut partner_of_x = vec![usize::MAX; r];
    let mut used = vec![false; g.vertex_count()];
    enumerate_matchings(g, &bip, 0, &mut partner_of_x, &mut used, &mut |m| {
        found.push(check_order(g, &bip.side_x, m));
    });
    Ok(found)
}

/// Every perfect matching with an admissible order. Since the order
/// conditions only depend on the matching, each matching contributes at most
/// one ordering: the topological order that prefers lower `x` indices.
pub fn cm_matching_orders(g: &UndirectedGraph, max_pairs: usize) -> Result<Vec<CmOrdering>> {
    Ok(perfect_matching_orders(g, max_pairs)?
        .into_iter()
        .filter_map(|c| match c {
            MatchingOrderCheck::Admissible(o) => Some(o),
            _ => None,
        })
        .collect())
}

/// First admissible matching order, if any.
pub fn find_cm_matching_order(g: &UndirectedGraph, max_pairs: usize) -> Result<Option<CmOrdering>> {
    Ok(cm_matching_orders(g, max_pairs)?.into_iter().next())
}

fn enumerate_matchings(
    g: &UndirectedGraph,
    bip: &Bipartition,
    i: usize,
    partner_of_x: &mut Vec<VertexId>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[VertexId]),
) {
    if i == bip.side_x.len() {
        visit(partner_of_x);
        return;
    }
    let x = bip.side_x[i];
    for &y in g.neighbors(x) {
        if used[y] {
            continue;
        }
        used[y] = true;
        partner_of_x[i] = y;
        enumerate_matchings(g, bip, i + 1, partner_of_x, used, visit);
        used[y] = false;
    }
}

fn check_order(
    g: &UndirectedGraph,
    xs: &[VertexId],
    partner_of_x: &[VertexId],
) -> MatchingOrderCheck {
    let r = xs.len();
    let pair = |p: usize| (xs[p], partner_of_x[p]);
    let pairs: Vec<(VertexId, VertexId)> = (0..r).map(pair).collect();
    // forward[p][q]: x_p adjacent to y_q for p != q, so p must precede q.
    let forward: Vec<Vec<bool>> = (0..r)
        .map(|p| {
            (0..r)
                .map(|q| p != q && g.has_edge(xs[p], partner_of_x[q]))
                .collect()
        })
        .collect();
    let mut indeg: Vec<usize> = (0..r)
        .map(|q| (0..r).filter(|&p| forward[p][q]).count())
        .collect();
    let mut done = vec![false; r];
    let mut order = Vec::with_capacity(r);
    for _ in 0..r {
        let Some(next) = (0..r).find(|&p| !done[p] && indeg[p] == 0) else {
            // every remaining pair has a remaining predecessor, so walking
            // predecessors from any of them closes a cycle
            let mut p = (0..r).find(|&p| !done[p]).expect("a pair remains");
            let mut seen = vec![false; r];
            while !seen[p] {
                seen[p] = true;
                p = (0..r)
                    .find(|&q| !done[q] && forward[q][p])
                    .expect("remaining predecessor");
            }
            let q = (0..r)
                .find(|&q| !done[q] && forward[p][q] && seen[q])
                .unwrap_or(p);
            return MatchingOrderCheck::Cyclic {
                pairs,
                first: pair(p),
                second: pair(q),
            };
        };
        done[next] = true;
        for q in 0..r {
            if forward[next][q] {
                indeg[q] -= 1;
            }
        }
        order.push(next);
    }
    for &p in &order {
        for &q in &order {
            for &s in &order {
                if forward[p][q] && forward[q][s] && !forward[p][s] {
                    return MatchingOrderCheck::Intransitive {
                        pairs,
                        triple: [pair(p), pair(q), pair(s)],
                    };
                }
            }
        }
    }
    MatchingOrderCheck::Admissible(CmOrdering {
        pairs: order.into_iter().map(pair).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::WeightedOrientedGraph;

    fn undirected(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        UndirectedGraph::new(names, edges.iter().copied()).unwrap()
    }

    #[test]
    fn leaf_matching_of_fig2() {
        let d = fixtures::d_fig2();
        let m = find_leaf_perfect_matching(&d.underlying_graph()).unwrap();
        let named: Vec<(&str, &str)> = m
            .pairs
            .iter()
            .map(|&(x, y)| (d.name(x), d.name(y)))
            .collect();
        assert_eq!(
            named,
            vec![("x1", "y1"), ("x2", "y2"), ("x3", "y3"), ("x4", "y4")]
        );
    }

    #[test]
    fn leaf_matching_failures_and_ties() {
        assert_eq!(
            find_leaf_perfect_matching(&undirected(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
            None
        );
        // star: two leaves claim the same centre
        assert_eq!(
            find_leaf_perfect_matching(&undirected(3, &[(0, 1), (0, 2)])),
            None
        );
        let single = find_leaf_perfect_matching(&undirected(2, &[(0, 1)])).unwrap();
        assert_eq!(single.pairs, vec![(0, 1)]);
    }

    #[test]
    fn cm_order_for_d_bip_is_identity() {
        let d = fixtures::d_bip();
        let ord = find_cm_matching_order(&d.underlying_graph(), 12)
            .unwrap()
            .unwrap();
        let named: Vec<(&str, &str)> = ord
            .pairs
            .iter()
            .map(|&(x, y)| (d.name(x), d.name(y)))
            .collect();
        assert_eq!(
            named,
            vec![("x1", "y1"), ("x2", "y2"), ("x3", "y3"), ("x4", "y4")]
        );
    }

    #[test]
    fn complete_bipartite_k22_has_no_cm_order() {
        // Exhausting both matchings by hand: each has the forward relation
        // 1 -> 2 and 2 -> 1, a cycle.
        let g = undirected(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(cm_matching_orders(&g, 12).unwrap(), vec![]);
        let checks = perfect_matching_orders(&g, 12).unwrap();
        assert_eq!(checks.len(), 2);
        assert!(checks
            .iter()
            .all(|c| matches!(c, MatchingOrderCheck::Cyclic { .. })));
    }

    #[test]
    fn single_edge_and_errors() {
        let g = undirected(2, &[(0, 1)]);
        assert_eq!(
            find_cm_matching_order(&g, 12).unwrap().unwrap().pairs,
            vec![(0, 1)]
        );
        let triangle = undirected(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(
            find_cm_matching_order(&triangle, 12),
            Err(Error::NotBipartite)
        );
        let big = WeightedOrientedGraph::from_named(
            &[("a", 1), ("b", 1), ("c", 1), ("d", 1)],
            &[("a", "b"), ("c", "d")],
        )
        .unwrap();
        assert!(find_cm_matching_order(&big.underlying_graph(), 1)
            .unwrap_err()
            .is_cap_exceeded());
    }

    #[test]
    fn intransitive_path_is_rejected() {
        // x0-y0, x1-y1, x2-y2 with x0-y1, x1-y2 but no x0-y2
        let g = undirected(6, &[(0, 3), (1, 4), (2, 5), (0, 4), (1, 5)]);
        assert_eq!(find_cm_matching_order(&g, 12).unwrap(), None);
        match &perfect_matching_orders(&g, 12).unwrap()[..] {
            [MatchingOrderCheck::Intransitive { triple, .. }] => {
                assert_eq!(*triple, [(0, 3), (1, 4), (2, 5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let closed = undirected(6, &[(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (0, 5)]);
        assert!(find_cm_matching_order(&closed, 12).unwrap().is_some());
    }
}
