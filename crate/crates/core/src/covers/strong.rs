use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{bits, hypergraph_of, mask_of, sort_sets, MASK_BITS};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedOrientedGraph};
use crate::ideal::edge_ideal;
use crate::polarize::polarize_ideal;
use crate::Limits;

/// Above this many vertices strong covers are found by growing minimal
/// covers instead of scanning every subset.
const ALL_SUBSETS_THRESHOLD: usize = 18;

/// A vertex cover of the underlying graph split into `L1`, `L2`, `L3`.
///
/// `L1` holds cover vertices with an out-neighbor outside the cover, `L3`
/// those whose whole neighborhood lies in the cover, and `L2` the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverPartition {
    pub cover: Vec<VertexId>,
    pub l1: Vec<VertexId>,
    pub l2: Vec<VertexId>,
    pub l3: Vec<VertexId>,
    pub minimal: bool,
    pub strong: bool,
    /// For each `v` in `L3`, an edge `(y, v)` with `y` in `L2 ∪ L3` and
    /// `w(y) >= 2`. Only filled in for strong covers.
    pub certificates: Vec<(VertexId, VertexId)>,
}

impl CoverPartition {
    /// Partitions `cover`, which must be a vertex cover of `D`'s underlying
    /// graph.
    pub fn new(d: &WeightedOrientedGraph, cover: &BTreeSet<VertexId>) -> CoverPartition {
        let inside = |v: &VertexId| cover.contains(v);
        let l1: Vec<VertexId> = cover
            .iter()
            .copied()
            .filter(|&x| d.out_neighbors(x).iter().any(|y| !inside(y)))
            .collect();
        let l3: Vec<VertexId> = cover
            .iter()
            .copied()
            .filter(|&x| {
                d.out_neighbors(x)
                    .iter()
                    .chain(d.in_neighbors(x))
                    .all(inside)
            })
            .collect();
        let l2: Vec<VertexId> = cover
            .iter()
            .copied()
            .filter(|x| !l1.contains(x) && !l3.contains(x))
            .collect();
        // A cover is minimal exactly when no vertex has its whole
        // neighborhood inside it.
        let minimal = l3.is_empty();
        let mut certificates = Vec::new();
        let mut strong = true;
        for &v in &l3 {
            let witness = d
                .in_neighbors(v)
                .iter()
                .copied()
                .find(|&y| d.weight(y) >= 2 && (l2.contains(&y) || l3.contains(&y)));
            match witness {
                Some(y) => certificates.push((y, v)),
                None => {
                    strong = false;
                    break;
                }
            }
        }
        if !strong {
            certificates.clear();
        }
        CoverPartition {
            cover: cover.iter().copied().collect(),
            l1,
            l2,
            l3,
            minimal,
            strong: minimal || strong,
            certificates,
        }
    }
}

fn edge_masks(d: &WeightedOrientedGraph) -> Vec<u64> {
    d.edges().map(|(u, v)| 1u64 << u | 1u64 << v).collect()
}

fn is_cover(edges: &[u64], m: u64) -> bool {
    edges.iter().all(|&e| e & m != 0)
}

/// Every strong vertex cover of `D`, minimal or not, ordered by size and then
/// lexicographically.
pub fn strong_vertex_covers(
    d: &WeightedOrientedGraph,
    limits: &Limits,
) -> Result<Vec<CoverPartition>> {
    let n = d.vertex_count();
    let cap = limits.strong_cover_vertices.min(MASK_BITS - 1);
    if n > cap {
        return Err(Error::cap("graph vertices for strong covers", cap, n));
    }
    let edges = edge_masks(d);
    let covers: Vec<u64> = if n <= ALL_SUBSETS_THRESHOLD {
        (0u64..1 << n).filter(|&m| is_cover(&edges, m)).collect()
    } else {
        let underlying =
            super::Hypergraph::new(d.names().to_vec(), d.edges().map(|(u, v)| vec![u, v]))?;
        let full = (1u64 << n) - 1;
        let mut seen = HashSet::new();
        for min in underlying.minimal_vertex_covers(cap)? {
            let base = mask_of(min);
            let rest = full & !base;
            // every subset of the complement, via the standard submask walk
            let mut sub = rest;
            loop {
                seen.insert(base | sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        seen.into_iter().collect()
    };
    let mut strong: Vec<CoverPartition> = covers
        .into_iter()
        .map(|m| CoverPartition::new(d, &bits(m).collect()))
        .filter(|p| p.strong)
        .collect();
    strong.sort_by(|a, b| {
        a.cover
            .len()
            .cmp(&b.cover.len())
            .then_with(|| a.cover.cmp(&b.cover))
    });
    Ok(strong)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssocMethod {
    /// Supports of the strong vertex covers.
    StrongCovers,
    /// Minimal covers of the polarization's hypergraph, with copy indices
    /// forgotten.
    Depolarization,
}

/// Associated primes of `I(D)` as sorted vertex sets, ordered by size and
/// then lexicographically. Embedded primes are kept.
pub fn associated_primes(
    d: &WeightedOrientedGraph,
    method: AssocMethod,
    limits: &Limits,
) -> Result<Vec<Vec<VertexId>>> {
    let mut primes: Vec<Vec<VertexId>> = match method {
        AssocMethod::StrongCovers => strong_vertex_covers(d, limits)?
            .into_iter()
            .map(|p| p.cover)
            .collect(),
        AssocMethod::Depolarization => {
            let pol = polarize_ideal(&edge_ideal(d))?;
            let covers =
                hypergraph_of(pol.ideal())?.minimal_vertex_covers(limits.cover_vertices)?;
            let set: BTreeSet<Vec<VertexId>> = covers
                .into_iter()
                .map(|c| {
                    pol.depolarize_indices(c.into_iter().map(|v| v as u32))
                        .into_iter()
                        .map(|v| v as usize)
                        .collect()
                })
                .collect();
            set.into_iter().collect()
        }
    };
    sort_sets(&mut primes);
    Ok(primes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnmixedMethod {
    /// The underlying graph is unmixed and no strong cover has a nonempty
    /// `L3`.
    StrongL3,
    /// All associated primes have the same size.
    Heights,
}

/// Why an ideal is mixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnmixedCertificate {
    /// A strong cover with nonempty `L3`.
    Cover(CoverPartition),
    /// Two primes (or minimal covers of the underlying graph) of different
    /// sizes.
    PrimePair(Vec<VertexId>, Vec<VertexId>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnmixedReport {
    pub unmixed: bool,
    pub certificate: Option<UnmixedCertificate>,
}

fn uneven_pair(sets: &[Vec<VertexId>]) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
    // sets are sorted by size, so the extremes differ when any two do
    let (first, last) = (sets.first()?, sets.last()?);
    (first.len() != last.len()).then(|| (first.clone(), last.clone()))
}

pub fn is_unmixed(
    d: &WeightedOrientedGraph,
    method: UnmixedMethod,
    limits: &Limits,
) -> Result<UnmixedReport> {
    let mixed = |c| {
        Ok(UnmixedReport {
            unmixed: false,
            certificate: Some(c),
        })
    };
    match method {
        UnmixedMethod::StrongL3 => {
            let underlying =
                super::Hypergraph::new(d.names().to_vec(), d.edges().map(|(u, v)| vec![u, v]))?;
            let graph_covers = underlying.minimal_vertex_covers(limits.cover_vertices)?;
            if let Some((a, b)) = uneven_pair(&graph_covers) {
                return mixed(UnmixedCertificate::PrimePair(a, b));
            }
            let worst = strong_vertex_covers(d, limits)?
                .into_iter()
                .filter(|p| !p.l3.is_empty())
                .min_by(|a, b| {
                    (a.l3.len(), a.cover.len(), &a.cover).cmp(&(
                        b.l3.len(),
                        b.cover.len(),
                        &b.cover,
                    ))
                });
            match worst {
                Some(p) => mixed(UnmixedCertificate::Cover(p)),
                None => Ok(UnmixedReport {
                    unmixed: true,
                    certificate: None,
                }),
            }
        }
        UnmixedMethod::Heights => {
            let primes = associated_primes(d, AssocMethod::Depolarization, limits)?;
            match uneven_pair(&primes) {
                Some((a, b)) => mixed(UnmixedCertificate::PrimePair(a, b)),
                None => Ok(UnmixedReport {
                    unmixed: true,
                    certificate: None,
                }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(d: &WeightedOrientedGraph, s: &[VertexId]) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|&i| d.name(i).to_string()).collect();
        v.sort();
        v
    }

    fn set(d: &WeightedOrientedGraph, ns: &[&str]) -> BTreeSet<VertexId> {
        ns.iter().map(|n| d.vertex(n).unwrap()).collect()
    }

    #[test]
    fn path_strong_cover_with_embedded_prime() {
        let d = fixtures::d_path();
        let covers = strong_vertex_covers(&d, &Limits::default()).unwrap();
        let target = set(&d, &["x2", "y1", "y2"]);
        let p = covers
            .iter()
            .find(|p| p.cover == target.iter().copied().collect::<Vec<_>>())
            .expect("{x2, y1, y2} is strong");
        assert_eq!(names(&d, &p.l1), ["y1"]);
        assert_eq!(names(&d, &p.l2), ["x2"]);
        assert_eq!(names(&d, &p.l3), ["y2"]);
        assert_eq!(
            p.certificates,
            vec![(d.vertex("x2").unwrap(), d.vertex("y2").unwrap())]
        );
        assert!(!p.minimal);

        let minimal: Vec<Vec<String>> = covers
            .iter()
            .filter(|p| p.minimal)
            .map(|p| names(&d, &p.cover))
            .collect();
        assert_eq!(
            minimal,
            vec![vec!["x1", "x2"], vec!["x1", "y2"], vec!["x2", "y1"]]
        );
    }

    #[test]
    fn weight_one_graphs_have_only_minimal_strong_covers() {
        let d = fixtures::d_fig2();
        let flat = WeightedOrientedGraph::new(d.names().to_vec(), vec![1; 8], d.edges()).unwrap();
        let covers = strong_vertex_covers(&flat, &Limits::default()).unwrap();
        assert!(covers.iter().all(|p| p.minimal && p.l3.is_empty()));
    }

    #[test]
    fn path_primes_agree() {
        let d = fixtures::d_path();
        let expected = vec![
            vec!["x1", "x2"],
            vec!["x1", "y2"],
            vec!["x2", "y1"],
            vec!["x1", "x2", "y2"],
            vec!["x2", "y1", "y2"],
        ];
        for method in [AssocMethod::StrongCovers, AssocMethod::Depolarization] {
            let primes = associated_primes(&d, method, &Limits::default()).unwrap();
            let named: Vec<Vec<String>> = primes.iter().map(|p| names(&d, p)).collect();
            assert_eq!(named, expected, "{method:?}");
        }
    }

    #[test]
    fn single_edge_primes() {
        let d = WeightedOrientedGraph::from_named(&[("x", 1), ("y", 1)], &[("x", "y")]).unwrap();
        for method in [AssocMethod::StrongCovers, AssocMethod::Depolarization] {
            assert_eq!(
                associated_primes(&d, method, &Limits::default()).unwrap(),
                vec![vec![0], vec![1]]
            );
        }
    }

    #[test]
    fn bipartite_fixture_primes_have_height_four() {
        let d = fixtures::d_bip();
        for method in [AssocMethod::StrongCovers, AssocMethod::Depolarization] {
            let primes = associated_primes(&d, method, &Limits::default()).unwrap();
            assert!(!primes.is_empty());
            assert!(primes.iter().all(|p| p.len() == 4), "{method:?}");
        }
    }

    #[test]
    fn unmixedness_of_fixtures() {
        let limits = Limits::default();
        let path = fixtures::d_path();
        let r = is_unmixed(&path, UnmixedMethod::StrongL3, &limits).unwrap();
        assert!(!r.unmixed);
        match r.certificate {
            Some(UnmixedCertificate::Cover(p)) => {
                assert_eq!(names(&path, &p.cover), ["x2", "y1", "y2"]);
                assert_eq!(names(&path, &p.l3), ["y2"]);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
        assert!(
            !is_unmixed(&path, UnmixedMethod::Heights, &limits)
                .unwrap()
                .unmixed
        );
        for method in [UnmixedMethod::StrongL3, UnmixedMethod::Heights] {
            assert!(
                is_unmixed(&fixtures::d_bip(), method, &limits)
                    .unwrap()
                    .unmixed
            );
            assert!(
                !is_unmixed(&fixtures::d_fig2(), method, &limits)
                    .unwrap()
                    .unmixed
            );
        }
    }

    #[test]
    fn l1_and_l3_never_overlap() {
        // A vertex in L3 has every neighbor in the cover, so it cannot have
        // an out-neighbor outside it.
        for d in [fixtures::d_path(), fixtures::d_fig2(), fixtures::d_bip()] {
            let edges = edge_masks(&d);
            for m in (0u64..1 << d.vertex_count()).filter(|&m| is_cover(&edges, m)) {
                let p = CoverPartition::new(&d, &bits(m).collect());
                assert!(p.l1.iter().all(|v| !p.l3.contains(v)));
                assert_eq!(p.l1.len() + p.l2.len() + p.l3.len(), p.cover.len());
            }
        }
    }

    #[test]
    fn superset_enumeration_matches_subset_scan() {
        // Twenty vertices forces the superset route; compare it with a scan.
        let mut verts = Vec::new();
        let mut edges = Vec::new();
        for i in 0..10 {
            verts.push((format!("a{i}"), if i % 3 == 0 { 2 } else { 1 }));
            verts.push((format!("b{i}"), 1));
        }
        for i in 0..10 {
            edges.push((format!("b{i}"), format!("a{i}")));
            if i + 1 < 10 {
                edges.push((format!("a{i}"), format!("a{}", i + 1)));
            }
        }
        let vref: Vec<(&str, u64)> = verts.iter().map(|(n, w)| (n.as_str(), *w)).collect();
        let eref: Vec<(&str, &str)> = edges
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let d = WeightedOrientedGraph::from_named(&vref, &eref).unwrap();
        let fast = strong_vertex_covers(&d, &Limits::default()).unwrap();
        let masks = edge_masks(&d);
        let mut slow: Vec<CoverPartition> = (0u64..1 << 20)
            .filter(|&m| is_cover(&masks, m))
            .map(|m| CoverPartition::new(&d, &bits(m).collect()))
            .filter(|p| p.strong)
            .collect();
        slow.sort_by(|a, b| {
            a.cover
                .len()
                .cmp(&b.cover.len())
                .then_with(|| a.cover.cmp(&b.cover))
        });
        assert_eq!(fast, slow);
    }
}
