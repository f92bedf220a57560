use std::collections::HashMap;

use serde::Serialize;

use super::rank::{pivot_columns, SparseRow};
use super::{stanley_reisner, Field, SimplicialComplex};
use crate::covers::bits;
use crate::error::Result;
use crate::ideal::MonomialIdeal;
use crate::polarize::polarize_ideal;
use crate::Limits;

/// Reduced homology ranks of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub field: Field,
    /// `ranks[k]` is the rank of reduced homology in dimension `k - 1`,
    /// from dimension `-1` up to the dimension of the complex.
    pub ranks: Vec<usize>,
    /// `faces[k]` counts faces with `k` vertices.
    pub faces: Vec<usize>,
}

impl HomologyProfile {
    /// Reduced homology rank in dimension `dim` (zero outside the range).
    pub fn rank_at(&self, dim: isize) -> usize {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.ranks.get(i).copied())
            .unwrap_or(0)
    }

    /// Lowest dimension with nonzero reduced homology.
    pub fn first_nonzero(&self) -> Option<isize> {
        self.ranks
            .iter()
            .position(|&r| r != 0)
            .map(|i| i as isize - 1)
    }

    /// Alternating face count equals the alternating homology rank sum.
    pub fn euler_consistent(&self) -> bool {
        let alt = |v: &[usize]| -> i64 {
            v.iter()
                .enumerate()
                .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
                .sum()
        };
        alt(&self.faces) == alt(&self.ranks)
    }
}

/// Signed boundary of `face` as `(codimension-one face, sign)` pairs.
fn boundary(face: u64) -> impl Iterator<Item = (u64, i8)> {
    bits(face)
        .enumerate()
        .map(move |(i, v)| (face & !(1u64 << v), if i % 2 == 0 { 1 } else { -1 }))
}

fn boundary_rows(faces: &[u64], targets: &[u64]) -> Vec<SparseRow> {
    faces
        .iter()
        .map(|&f| {
            boundary(f)
                .map(|(g, s)| (targets.binary_search(&g).expect("boundary face present"), s))
                .collect()
        })
        .collect()
}

/// Exact reduced homology over `field`.
pub fn reduced_homology(
    delta: &SimplicialComplex,
    field: Field,
    face_cap: usize,
) -> Result<HomologyProfile> {
    let profile = homology_through(delta, field, face_cap, delta.dim())?;
    debug_assert!(profile.euler_consistent());
    Ok(profile)
}

/// Reduced homology in dimensions `-1..=top` only, which needs faces with at
/// most `top + 2` vertices. The face counts cover the same range plus one.
fn homology_through(
    delta: &SimplicialComplex,
    field: Field,
    face_cap: usize,
    top: isize,
) -> Result<HomologyProfile> {
    let sizes = (top + 2).max(0) as usize;
    let faces = delta.faces_up_to(sizes, face_cap)?;
    let counts: Vec<usize> = faces.iter().map(Vec::len).collect();
    // boundary_rank[k]: rank of the map from k-vertex faces to (k-1)-vertex
    // faces. Working downwards, a face that is the pivot of some reduced
    // boundary has a boundary that reduces to zero, so its row is skipped.
    let mut boundary_rank = vec![0usize; faces.len() + 1];
    let mut cleared: Vec<usize> = Vec::new();
    for k in (1..faces.len()).rev() {
        let live: Vec<u64> = faces[k]
            .iter()
            .enumerate()
            .filter(|(i, _)| cleared.binary_search(i).is_err())
            .map(|(_, &f)| f)
            .collect();
        let rows = boundary_rows(&live, &faces[k - 1]);
        cleared = pivot_columns(&rows, faces[k - 1].len(), field);
        boundary_rank[k] = cleared.len();
        cleared.sort_unstable();
    }
    let ranks = (0..faces.len().min(sizes))
        .map(|k| counts[k] - boundary_rank[k] - boundary_rank[k + 1])
        .collect();
    Ok(HomologyProfile {
        field,
        ranks,
        faces: counts,
    })
}

/// Checks that every composite boundary map vanishes, over the integers.
pub fn boundary_squares_vanish(delta: &SimplicialComplex, face_cap: usize) -> Result<bool> {
    let faces = delta.faces_by_size(face_cap)?;
    for f in faces.iter().skip(2).flatten() {
        let mut acc: HashMap<u64, i32> = HashMap::new();
        for (g, s) in boundary(*f) {
            for (h, t) in boundary(g) {
                *acc.entry(h).or_default() += (s * t) as i32;
            }
        }
        if acc.values().any(|&c| c != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduced homology in dimensions `-1..=top`, computed on the strong core.
fn core_homology(
    delta: &SimplicialComplex,
    field: Field,
    face_cap: usize,
    top: isize,
) -> Result<HomologyProfile> {
    homology_through(&delta.strong_core(), field, face_cap, top)
}

fn vanishes_below(
    delta: &SimplicialComplex,
    top: isize,
    field: Field,
    face_cap: usize,
) -> Result<bool> {
    if top < 0 || delta.is_cone() {
        return Ok(true);
    }
    let h = core_homology(delta, field, face_cap, top - 1)?;
    Ok((-1..top).all(|i| h.rank_at(i) == 0))
}

/// Reisner's criterion: the complex is pure and every link (the complex
/// itself is the link of the empty face) has vanishing reduced homology
/// below its top dimension. Cone links are acyclic, so only links of
/// intersections of facets are computed.
pub fn is_cm_complex(delta: &SimplicialComplex, field: Field, face_cap: usize) -> Result<bool> {
    if !delta.is_pure() {
        return Ok(false);
    }
    // large faces have small links, so failures tend to show up early
    for face in delta.closed_faces(face_cap)?.into_iter().rev() {
        let link = delta.link(face);
        if !vanishes_below(&link, link.dim(), field, face_cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reisner's criterion checked on the link of every face, with no
/// shortcuts. Slow; kept as a cross-check for [`is_cm_complex`].
pub fn is_cm_every_face(delta: &SimplicialComplex, field: Field, face_cap: usize) -> Result<bool> {
    let faces = delta.faces_by_size(face_cap)?;
    for face in faces.iter().flatten() {
        let link = delta.link(*face);
        let h = reduced_homology(&link, field, face_cap)?;
        if (-1..link.dim()).any(|i| h.rank_at(i) != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `depth k[Δ]` from link homology: one more than the smallest
/// `|σ| + i` with `H̃_i(lk σ) ≠ 0`, capped at `dim Δ`.
pub fn depth_of_complex(delta: &SimplicialComplex, field: Field, face_cap: usize) -> Result<usize> {
    // a facet has link {∅}, which is nonzero in dimension -1
    let Some(smallest) = delta.facet_sets().first().map(Vec::len) else {
        return Ok(0);
    };
    let mut best = smallest as isize - 1;
    for face in delta.closed_faces(face_cap)? {
        let size = face.count_ones() as isize;
        // the smallest possible value at this size is size - 1
        if size > best {
            break;
        }
        let link = delta.link(face);
        if link.is_cone() {
            continue;
        }
        // only homology that would lower the current minimum matters
        let h = core_homology(&link, field, face_cap, best - size - 1)?;
        if let Some(i) = h.first_nonzero() {
            best = best.min(size + i);
        }
    }
    Ok((best + 1).max(0) as usize)
}

/// `depth k[Δ]` as one more than the largest `i` whose `i`-skeleton is
/// Cohen-Macaulay. Slow; kept as a cross-check for [`depth_of_complex`].
pub fn depth_by_skeletons(
    delta: &SimplicialComplex,
    field: Field,
    face_cap: usize,
) -> Result<usize> {
    let mut best = -1;
    for i in 0..=delta.dim() {
        if is_cm_every_face(&delta.skeleton(i, face_cap)?, field, face_cap)? {
            best = i;
        }
    }
    Ok((best + 1) as usize)
}

/// Sequential Cohen-Macaulayness, checked link by link.
///
/// The link of `σ` in the pure `i`-skeleton is the pure `k`-skeleton of
/// `lk σ` with `k = i - |σ|`, whose homology below `k` is that of the
/// subcomplex of `lk σ` generated by facets of dimension at least `k`. So
/// every pure skeleton is Cohen-Macaulay exactly when, for every face and
/// every facet dimension `k` of its link, that subcomplex has no homology
/// below `k`. Cone links pass at every `k` and are skipped.
pub fn is_sequentially_cm_complex(
    delta: &SimplicialComplex,
    field: Field,
    face_cap: usize,
) -> Result<bool> {
    for face in delta.closed_faces(face_cap)?.into_iter().rev() {
        let link = delta.link(face);
        let mut sizes: Vec<usize> = link.facet_sets().iter().map(Vec::len).collect();
        sizes.dedup();
        for size in sizes {
            if !vanishes_below(
                &link.facets_at_least(size),
                size as isize - 1,
                field,
                face_cap,
            )? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Duval's criterion taken literally: every pure skeleton is
/// Cohen-Macaulay. Slow; kept as a cross-check for
/// [`is_sequentially_cm_complex`].
pub fn is_sequentially_cm_by_skeletons(
    delta: &SimplicialComplex,
    field: Field,
    face_cap: usize,
) -> Result<bool> {
    for i in 0..=delta.dim() {
        if !is_cm_every_face(&delta.pure_skeleton(i, face_cap)?, field, face_cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reisner's criterion applied to the Stanley-Reisner complex of a
/// squarefree ideal.
pub fn is_cm_reisner(ideal: &MonomialIdeal, field: Field, limits: &Limits) -> Result<bool> {
    let delta = stanley_reisner(ideal, limits.cover_vertices)?;
    is_cm_complex(&delta, field, limits.faces)
}

/// Cohen-Macaulayness of `R/I` for any monomial ideal, via polarization.
pub fn oracle_cm_monomial(ideal: &MonomialIdeal, field: Field, limits: &Limits) -> Result<bool> {
    is_cm_reisner(polarize_ideal(ideal)?.ideal(), field, limits)
}

/// Sequential Cohen-Macaulayness of `R/I`, via polarization.
pub fn is_sequentially_cm(ideal: &MonomialIdeal, field: Field, limits: &Limits) -> Result<bool> {
    let delta = stanley_reisner(polarize_ideal(ideal)?.ideal(), limits.cover_vertices)?;
    is_sequentially_cm_complex(&delta, field, limits.faces)
}

/// Depth and Krull dimension of `R/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub depth: usize,
    pub dim: usize,
    /// Variables added by polarization; both invariants shift by this much
    /// between `R/I` and its polarization.
    pub added_variables: usize,
}

impl DepthReport {
    pub fn is_cm(&self) -> bool {
        self.depth == self.dim
    }
}

pub fn depth_skeleton(ideal: &MonomialIdeal, field: Field, limits: &Limits) -> Result<DepthReport> {
    let pol = polarize_ideal(ideal)?;
    let delta = stanley_reisner(pol.ideal(), limits.cover_vertices)?;
    let shift = pol.extra_variable_count();
    let depth = depth_of_complex(&delta, field, limits.faces)?;
    let dim = (delta.dim() + 1) as usize;
    Ok(DepthReport {
        depth: depth - shift,
        dim: dim - shift,
        added_variables: shift,
    })
}
