//! Structural checks on the minimal vertex covers of `H(I(D)^pol)` for a
//! whiskered `D`.
//!
//! With matched pairs `(x_i, y_i)`, a cover `C` splits into `C1` (copies
//! `x_{i,1}`), `C2` (copies `x_{i,j}` with `j >= 2`) and `C3` (copies
//! `y_{i,k}`). The checks below are:
//!
//! * every pair meets `C`, and a pair missing `x_{i,1}` has at most one
//!   copy in each of `C2` and `C3`;
//! * with no heavy matched tail, `|C| = r` and each pair missing `x_{i,1}`
//!   has a copy in exactly one of `C2`, `C3`; covers agreeing on `C2` and
//!   `C3` agree on `C1`;
//! * with exactly one heavy matched tail at pair `s`, `|C|` is `r` or
//!   `r + 1`, the latter exactly when some `x_l -> x_s` has neither
//!   `x_{s,1}` nor `x_{l,1}` in `C`, and every other pair missing its first
//!   copy behaves as in the previous case;
//! * moving a copy down (`y_{i,j} -> y_{i,j-1}`, `x_{i,j} -> x_{i,j-1}` for
//!   `j >= 3`, and without a heavy tail also `x_{i,2} -> x_{i,1}` and
//!   `y_{i,k} -> x_{i,j}`) gives another minimal cover.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::whisker_violations;
use crate::covers::hypergraph_of;
use crate::error::{Error, Result};
use crate::graph::{find_leaf_perfect_matching, WeightedOrientedGraph};
use crate::ideal::{edge_ideal, Var};
use crate::polarize::polarize_ideal;
use crate::Limits;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoverStructureReport {
    pub covers_checked: usize,
    /// Number of matched edges with a heavy tail.
    pub violations_of_tail_weight: usize,
    /// One line per failed check, naming the cover.
    pub violations: Vec<String>,
}

impl CoverStructureReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Where each pair's copies sit inside one cover.
#[derive(Default)]
struct PairSlice {
    x1: bool,
    x_high: Vec<u64>,
    y: Vec<u64>,
}

/// Runs every check that applies to `d` (after boundary normalization) and
/// collects the failures.
pub fn cover_structure_violations(
    d: &WeightedOrientedGraph,
    limits: &Limits,
) -> Result<CoverStructureReport> {
    let d = d.normalize_boundary_weights();
    let matching =
        find_leaf_perfect_matching(&d.underlying_graph()).ok_or(Error::NoLeafMatching)?;
    let heavy = whisker_violations(&d, &matching);
    let pairs = match heavy.as_slice() {
        [s] => matching.with_first(*s).pairs,
        _ => matching.pairs.clone(),
    };
    let r = pairs.len();
    let cm = heavy.is_empty();
    let single = heavy.len() == 1;

    let pol = polarize_ideal(&edge_ideal(&d))?;
    let mut covers = hypergraph_of(pol.ideal())?.minimal_vertex_covers(limits.cover_vertices)?;
    for c in &mut covers {
        c.sort_unstable();
    }
    let known: BTreeSet<Vec<usize>> = covers.iter().cloned().collect();

    // pair index and side of every original vertex
    let mut slot = vec![(usize::MAX, false); d.vertex_count()];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        slot[x] = (i, true);
        slot[y] = (i, false);
    }
    let name = |c: &[usize]| {
        let names: Vec<&str> = c
            .iter()
            .map(|&v| pol.ideal().registry()[v].as_str())
            .collect();
        format!("{{{}}}", names.join(", "))
    };

    let mut report = CoverStructureReport {
        covers_checked: covers.len(),
        violations_of_tail_weight: heavy.len(),
        violations: Vec::new(),
    };
    let mut by_high_part: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for c in &covers {
        let mut fail = |what: String| report.violations.push(format!("cover {}: {what}", name(c)));
        let mut slices: Vec<PairSlice> = (0..r).map(|_| PairSlice::default()).collect();
        for &v in c {
            let pv = pol.variable(v as Var);
            let (i, is_x) = slot[pv.base as usize];
            let s = &mut slices[i];
            match (is_x, pv.copy) {
                (true, 1) => s.x1 = true,
                (true, j) => s.x_high.push(j),
                (false, k) => s.y.push(k),
            }
        }

        for (i, s) in slices.iter().enumerate() {
            let copies = usize::from(s.x1) + s.x_high.len() + s.y.len();
            if copies == 0 {
                fail(format!("pair {} has no copy in the cover", i + 1));
            }
            if usize::from(s.x1) + s.x_high.len() > 1 {
                fail(format!("pair {} has two copies of its x vertex", i + 1));
            }
            if !s.x1 && (s.x_high.len() > 1 || s.y.len() > 1) {
                fail(format!("pair {} has two copies on one side", i + 1));
            }
            let exclusive = !s.x1 && (i > 0 || !single) && (cm || single);
            if exclusive && s.x_high.is_empty() == s.y.is_empty() {
                fail(format!(
                    "pair {} misses its first copy but meets the higher x copies and the leaf copies {}",
                    i + 1,
                    if s.y.is_empty() { "neither" } else { "both" }
                ));
            }
        }

        let x1_in = |i: usize| slices[i].x1;
        if cm && c.len() != r {
            fail(format!("size {} differs from the {r} pairs", c.len()));
        }
        if single {
            let xs = pairs[0].0;
            let doubled = d.in_neighbors(xs).iter().any(|&l| {
                let (li, is_x) = slot[l];
                is_x && li != 0 && !x1_in(0) && !x1_in(li)
            });
            let expected = if doubled { r + 1 } else { r };
            if c.len() != expected {
                fail(format!(
                    "size {} but {expected} expected from the in-edges of the heavy tail",
                    c.len()
                ));
            }
        }

        for (pos, &v) in c.iter().enumerate() {
            let pv = pol.variable(v as Var);
            let (i, is_x) = slot[pv.base as usize];
            let lower = match (is_x, pv.copy) {
                (false, k) if k >= 2 => Some(k - 1),
                (true, j) if j >= 3 || (cm && j == 2) => Some(j - 1),
                _ => None,
            };
            let mut targets: Vec<Var> = lower
                .and_then(|copy| pol.index_of(pv.base, copy))
                .into_iter()
                .collect();
            if cm && !is_x {
                let x = pairs[i].0 as Var;
                targets.extend((1..).map_while(|j| pol.index_of(x, j)));
            }
            for t in targets {
                let mut moved = c.clone();
                moved[pos] = t as usize;
                moved.sort_unstable();
                moved.dedup();
                if !known.contains(&moved) {
                    fail(format!(
                        "replacing {} by {} gives {}, which is not a minimal cover",
                        pol.ideal().registry()[v],
                        pol.ideal().registry()[t as usize],
                        name(&moved)
                    ));
                }
            }
        }

        if cm {
            let first_x = |v: usize| {
                let pv = pol.variable(v as Var);
                pv.copy == 1 && slot[pv.base as usize].1
            };
            let (low, high): (Vec<usize>, Vec<usize>) = c.iter().partition(|&&v| first_x(v));
            if let Some(other) = by_high_part.insert(high, low.clone()) {
                if other != low {
                    fail(format!(
                        "another cover shares its higher and leaf copies but has first copies {}",
                        name(&other)
                    ));
                }
            }
        }
    }
    Ok(report)
}
