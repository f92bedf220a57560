//! Stanley-Reisner complexes and exact simplicial homology, used as an
//! independent check on every algebraic classification.

mod homology;
mod rank;

pub use homology::{
    boundary_squares_vanish, depth_by_skeletons, depth_of_complex, depth_skeleton, is_cm_complex,
    is_cm_every_face, is_cm_reisner, is_sequentially_cm, is_sequentially_cm_by_skeletons,
    is_sequentially_cm_complex, oracle_cm_monomial, reduced_homology, DepthReport, HomologyProfile,
};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::covers::{bits, hypergraph_of, MASK_BITS};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// `Prime(p)` is the field with `p` elements.
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(2)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!(
                "{p} is not a prime below 2^32"
            )));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "f{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q`, `f2`, `f3`, ...
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" {
            return Ok(Field::Rationals);
        }
        let p = s
            .strip_prefix('f')
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| {
                Error::InvalidArgument(format!("unknown field `{s}` (use q, f2, f3, ...)"))
            })?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A simplicial complex on a fixed vertex set, stored by its facets as
/// bitmasks over the vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<u64>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SimplicialComplex", 2)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("facets", &self.facet_sets())?;
        st.end()
    }
}

impl SimplicialComplex {
    /// Builds a complex from generating faces; non-maximal ones are dropped.
    /// An empty list gives the void complex, which has no faces at all.
    pub fn new(vertices: Vec<String>, faces: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if vertices.len() > MASK_BITS {
            return Err(Error::cap("complex vertices", MASK_BITS, vertices.len()));
        }
        let mut masks = Vec::new();
        for f in faces {
            if let Some(&bad) = f.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidArgument(format!(
                    "face vertex {bad} out of range"
                )));
            }
            masks.push(f.into_iter().fold(0u64, |m, v| m | 1 << v));
        }
        Ok(Self::from_masks(vertices, masks))
    }

    pub(crate) fn from_masks(vertices: Vec<String>, mut masks: Vec<u64>) -> Self {
        masks.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
        masks.dedup();
        let mut facets: Vec<u64> = Vec::new();
        for m in masks {
            if !facets.iter().any(|&f| f & m == m) {
                facets.push(m);
            }
        }
        facets.sort_unstable_by(|a, b| a.count_ones().cmp(&b.count_ones()).then(a.cmp(b)));
        SimplicialComplex { vertices, facets }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Facets as sorted vertex index lists, smallest first.
    pub fn facet_sets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| bits(f).collect()).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, with `-1` for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.count_ones() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets
            .windows(2)
            .all(|w| w[0].count_ones() == w[1].count_ones())
    }

    pub fn contains_face(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| f & face == face)
    }

    /// The link of `face`, on the same vertex set.
    pub fn link(&self, face: u64) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .filter(|&&f| f & face == face)
            .map(|&f| f & !face)
            .collect();
        // removing a common face from facets keeps them an antichain
        SimplicialComplex::from_masks(self.vertices.clone(), facets)
    }

    /// True when all facets share a vertex, so the complex is contractible.
    pub fn is_cone(&self) -> bool {
        !self.facets.is_empty() && self.facets.iter().fold(u64::MAX, |acc, &f| acc & f) != 0
    }

    /// Faces that are intersections of facets, sorted by size. A face has a
    /// link that is not a cone exactly when it is one of these. Stops with an
    /// error past `cap` faces.
    pub fn closed_faces(&self, cap: usize) -> Result<Vec<u64>> {
        let mut seen: HashSet<u64> = self.facets.iter().copied().collect();
        let mut queue: Vec<u64> = self.facets.clone();
        while let Some(x) = queue.pop() {
            for &f in &self.facets {
                let meet = x & f;
                if seen.insert(meet) {
                    if seen.len() > cap {
                        return Err(Error::cap("closed faces", cap, seen.len()));
                    }
                    queue.push(meet);
                }
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable_by(|a, b| a.count_ones().cmp(&b.count_ones()).then(a.cmp(b)));
        Ok(out)
    }

    /// Repeatedly deletes a vertex whose link is a cone. Each deletion keeps
    /// the homotopy type, so the result has the same reduced homology.
    pub fn strong_core(&self) -> SimplicialComplex {
        let mut facets = self.facets.clone();
        loop {
            let support = facets.iter().fold(0u64, |m, &f| m | f);
            let dominated = bits(support).find(|&v| {
                let star = facets
                    .iter()
                    .filter(|&&f| f >> v & 1 == 1)
                    .fold(u64::MAX, |acc, &f| acc & f);
                star & !(1u64 << v) != 0
            });
            let Some(v) = dominated else { break };
            facets = SimplicialComplex::from_masks(
                Vec::new(),
                facets.iter().map(|&f| f & !(1u64 << v)).collect(),
            )
            .facets;
        }
        SimplicialComplex {
            vertices: self.vertices.clone(),
            facets,
        }
    }

    /// The subcomplex generated by the facets with at least `size` vertices.
    pub fn facets_at_least(&self, size: usize) -> SimplicialComplex {
        SimplicialComplex {
            vertices: self.vertices.clone(),
            facets: self
                .facets
                .iter()
                .copied()
                .filter(|f| f.count_ones() as usize >= size)
                .collect(),
        }
    }

    /// All faces grouped by size: entry `k` holds the faces with `k`
    /// vertices, sorted. Stops with an error past `cap` faces.
    pub fn faces_by_size(&self, cap: usize) -> Result<Vec<Vec<u64>>> {
        self.faces_up_to((self.dim() + 1).max(0) as usize, cap)
    }

    /// Like [`SimplicialComplex::faces_by_size`], keeping only faces with at
    /// most `max_size` vertices.
    pub fn faces_up_to(&self, max_size: usize, cap: usize) -> Result<Vec<Vec<u64>>> {
        fn extend(from: &[usize], face: u64, size: usize, max: usize, out: &mut [Vec<u64>]) {
            out[size].push(face);
            if size < max {
                for (i, &v) in from.iter().enumerate() {
                    extend(&from[i + 1..], face | 1 << v, size + 1, max, out);
                }
            }
        }
        fn settle(level: &mut Vec<u64>) {
            level.sort_unstable();
            level.dedup();
        }
        let top = ((self.dim() + 1).max(0) as usize).min(max_size);
        let mut by_size = vec![Vec::new(); top + 1];
        let flush = cap.saturating_mul(2).max(1 << 16);
        for &f in &self.facets {
            let verts: Vec<usize> = bits(f).collect();
            extend(&verts, 0, 0, top, &mut by_size);
            if by_size.iter().any(|l| l.len() > flush) {
                by_size.iter_mut().for_each(settle);
                let total: usize = by_size.iter().map(Vec::len).sum();
                if total > cap {
                    return Err(Error::cap("faces", cap, total));
                }
            }
        }
        by_size.iter_mut().for_each(settle);
        let total: usize = by_size.iter().map(Vec::len).sum();
        if total > cap {
            return Err(Error::cap("faces", cap, total));
        }
        Ok(by_size)
    }

    /// The `i`-skeleton: every face of dimension at most `i`.
    pub fn skeleton(&self, i: isize, cap: usize) -> Result<SimplicialComplex> {
        let faces = self.faces_by_size(cap)?;
        let size = (i + 1).max(0) as usize;
        let mut gens: Vec<u64> = faces.get(size).cloned().unwrap_or_default();
        gens.extend(
            self.facets
                .iter()
                .filter(|f| (f.count_ones() as usize) < size),
        );
        if self.is_void() {
            gens.clear();
        }
        Ok(SimplicialComplex::from_masks(self.vertices.clone(), gens))
    }

    /// The pure `i`-skeleton: the subcomplex generated by the faces of
    /// dimension exactly `i`.
    pub fn pure_skeleton(&self, i: isize, cap: usize) -> Result<SimplicialComplex> {
        let faces = self.faces_by_size(cap)?;
        let size = (i + 1).max(0) as usize;
        let gens = faces.get(size).cloned().unwrap_or_default();
        Ok(SimplicialComplex::from_masks(self.vertices.clone(), gens))
    }
}

/// The Stanley-Reisner complex of a proper squarefree ideal: its facets are
/// the complements of the minimal vertex covers.
pub fn stanley_reisner(ideal: &MonomialIdeal, cover_cap: usize) -> Result<SimplicialComplex> {
    if ideal.is_unit() {
        return Err(Error::InvalidArgument(
            "the unit ideal has no Stanley-Reisner complex".into(),
        ));
    }
    let h = hypergraph_of(ideal)?;
    let n = h.vertex_count();
    if n > MASK_BITS {
        return Err(Error::cap("complex vertices", MASK_BITS, n));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let facets = h
        .minimal_vertex_covers(cover_cap)?
        .into_iter()
        .map(|c| full & !c.into_iter().fold(0u64, |m, v| m | 1 << v))
        .collect();
    Ok(SimplicialComplex::from_masks(h.vertices().to_vec(), facets))
}
