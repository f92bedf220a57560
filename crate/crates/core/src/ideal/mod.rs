//! Monomial ideals over a named variable registry.

mod format;
mod monomial;

pub use format::{parse_ideal, render_ideal, render_monomial};
pub use monomial::{Monomial, Var};

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedOrientedGraph;

/// A monomial ideal given by its minimal generators.
///
/// Generators are kept as a divisibility antichain in canonical order
/// (ascending degree, then lex-larger first by registry index).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    registry: Vec<String>,
    gens: Vec<Monomial>,
}

/// Keeps only divisibility-minimal monomials, in canonical order.
pub fn minimalize(gens: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    all.sort_by(|a, b| a.graded_cmp(b));
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    // A divisor has degree <= its multiple, so earlier entries suffice.
    for g in all {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimalizing them.
    pub fn new(registry: Vec<String>, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens = minimalize(gens);
        if let Some(g) = gens
            .iter()
            .find(|g| g.max_var().is_some_and(|v| v as usize >= registry.len()))
        {
            return Err(Error::InvalidArgument(format!(
                "generator uses variable index {} outside a registry of {}",
                g.max_var().unwrap(),
                registry.len()
            )));
        }
        let mut seen = BTreeSet::new();
        if let Some(dup) = registry.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::InvalidArgument(format!(
                "duplicate variable `{dup}`"
            )));
        }
        Ok(MonomialIdeal { registry, gens })
    }

    pub(crate) fn new_unchecked(
        registry: Vec<String>,
        gens: impl IntoIterator<Item = Monomial>,
    ) -> Self {
        MonomialIdeal {
            registry,
            gens: minimalize(gens),
        }
    }

    /// Convenience constructor from `(name, exponent)` lists.
    pub fn from_named(registry: &[&str], gens: &[&[(&str, u64)]]) -> Result<Self> {
        let reg: Vec<String> = registry.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let mut pairs = Vec::with_capacity(g.len());
            for &(name, e) in g.iter() {
                let v = reg
                    .iter()
                    .position(|r| r == name)
                    .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
                pairs.push((v as Var, e));
            }
            out.push(Monomial::from_pairs(pairs));
        }
        Self::new(reg, out)
    }

    pub fn registry(&self) -> &[String] {
        &self.registry
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn var_count(&self) -> usize {
        self.registry.len()
    }

    pub fn var(&self, name: &str) -> Result<Var> {
        self.registry
            .iter()
            .position(|r| r == name)
            .map(|i| i as Var)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Largest exponent of each registry variable across the generators.
    pub fn max_exponents(&self) -> Vec<u64> {
        let mut p = vec![0; self.registry.len()];
        for g in &self.gens {
            for &(v, e) in g.exponents() {
                p[v as usize] = p[v as usize].max(e);
            }
        }
        p
    }

    /// The squarefree ideal generated by the supports of the generators.
    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new_unchecked(
            self.registry.clone(),
            self.gens.iter().map(|g| Monomial::squarefree(g.support())),
        )
    }

    /// `(I : m)`, generated by `g / gcd(g, m)` over the generators `g`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new_unchecked(
            self.registry.clone(),
            self.gens.iter().map(|g| g.quotient_by_gcd(m)),
        )
    }

    /// `I + J`. The registry is this ideal's registry followed by the
    /// variables of `other` not already present.
    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut registry = self.registry.clone();
        let mut pos: HashMap<&str, Var> = HashMap::new();
        for (i, n) in self.registry.iter().enumerate() {
            pos.insert(n.as_str(), i as Var);
        }
        let mut remap = Vec::with_capacity(other.registry.len());
        for n in &other.registry {
            let idx = match pos.get(n.as_str()) {
                Some(&i) => i,
                None => {
                    registry.push(n.clone());
                    (registry.len() - 1) as Var
                }
            };
            remap.push(idx);
        }
        let gens = self
            .gens
            .iter()
            .cloned()
            .chain(other.gens.iter().map(|g| g.rename(|v| remap[v as usize])))
            .collect::<Vec<_>>();
        MonomialIdeal::new_unchecked(registry, gens)
    }

    /// Variables that occur in exactly one minimal generator.
    pub fn free_variables(&self) -> Vec<Var> {
        let mut count = vec![0usize; self.registry.len()];
        for g in &self.gens {
            for v in g.support() {
                count[v as usize] += 1;
            }
        }
        (0..self.registry.len() as Var)
            .filter(|&v| count[v as usize] == 1)
            .collect()
    }

    /// Multiplies the unique generator containing the free variable `v` by
    /// `v^m`.
    pub fn bump_free_variable(&self, v: Var, m: u64) -> Result<MonomialIdeal> {
        let name = || {
            self.registry
                .get(v as usize)
                .cloned()
                .unwrap_or_else(|| format!("#{v}"))
        };
        let holders: Vec<usize> = (0..self.gens.len())
            .filter(|&i| self.gens[i].exponent(v) > 0)
            .collect();
        if holders.len() != 1 {
            return Err(Error::NotFree(name()));
        }
        let mut gens = self.gens.clone();
        gens[holders[0]] = gens[holders[0]].mul(&Monomial::power(v, m));
        Ok(MonomialIdeal::new_unchecked(self.registry.clone(), gens))
    }

    /// Same ideal viewed over a different registry, mapping each variable by
    /// name. Fails if a used variable is missing.
    pub fn reindexed(&self, registry: &[String]) -> Result<MonomialIdeal> {
        let pos: HashMap<&str, Var> = registry
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as Var))
            .collect();
        let mut map = Vec::with_capacity(self.registry.len());
        for n in &self.registry {
            map.push(pos.get(n.as_str()).copied());
        }
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut pairs = Vec::new();
            for &(v, e) in g.exponents() {
                let t = map[v as usize]
                    .ok_or_else(|| Error::UnknownVertex(self.registry[v as usize].clone()))?;
                pairs.push((t, e));
            }
            gens.push(Monomial::from_pairs(pairs));
        }
        MonomialIdeal::new(registry.to_vec(), gens)
    }

    /// Equality of generator sets after matching variables by name.
    pub fn same_generators(&self, other: &MonomialIdeal) -> bool {
        let key = |i: &MonomialIdeal| -> BTreeSet<Vec<(String, u64)>> {
            i.gens
                .iter()
                .map(|g| {
                    let mut v: Vec<(String, u64)> = g
                        .exponents()
                        .iter()
                        .map(|&(x, e)| (i.registry[x as usize].clone(), e))
                        .collect();
                    v.sort();
                    v
                })
                .collect()
        };
        key(self) == key(other)
    }
}

/// `I(D)`: one generator `x_i * x_j^w(x_j)` per directed edge `(x_i, x_j)`.
pub fn edge_ideal(d: &WeightedOrientedGraph) -> MonomialIdeal {
    let gens = d
        .edges()
        .map(|(u, v)| Monomial::from_pairs([(u as Var, 1), (v as Var, d.weight(v))]));
    MonomialIdeal::new_unchecked(d.names().to_vec(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ideal(reg: &[&str], gens: &[&[(&str, u64)]]) -> MonomialIdeal {
        MonomialIdeal::from_named(reg, gens).unwrap()
    }

    #[test]
    fn edge_ideal_of_path() {
        let i = edge_ideal(&fixtures::d_path());
        let expected = ideal(
            &["x1", "x2", "y1", "y2"],
            &[
                &[("y1", 1), ("x1", 2)],
                &[("x1", 1), ("x2", 3)],
                &[("x2", 1), ("y2", 1)],
            ],
        );
        assert_eq!(i, expected);
    }

    #[test]
    fn edge_ideal_of_bipartite_fixture() {
        let i = edge_ideal(&fixtures::d_bip());
        let reg = ["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"];
        let expected = ideal(
            &reg,
            &[
                &[("x1", 2), ("y1", 1)],
                &[("x1", 1), ("y2", 1)],
                &[("x1", 1), ("y3", 1)],
                &[("x1", 2), ("y4", 1)],
                &[("x2", 2), ("y2", 1)],
                &[("x2", 1), ("y3", 1)],
                &[("x3", 1), ("y3", 1)],
                &[("x4", 1), ("y4", 2)],
            ],
        );
        assert_eq!(i, expected);
    }

    #[test]
    fn trivial_weights_give_the_graph_edge_ideal() {
        let d = fixtures::d_fig2();
        let flat = WeightedOrientedGraph::new(d.names().to_vec(), vec![1; 8], d.edges()).unwrap();
        let i = edge_ideal(&flat);
        assert!(i.is_squarefree());
        assert_eq!(i.generators().len(), 9);
    }

    #[test]
    fn minimalize_examples() {
        let reg = ["x", "y"];
        assert_eq!(
            ideal(&reg, &[&[("x", 1)], &[("x", 1), ("y", 1)]]).generators(),
            &[Monomial::var(0)]
        );
        let i = ideal(
            &reg,
            &[
                &[("x", 2), ("y", 1)],
                &[("x", 1), ("y", 2)],
                &[("x", 2), ("y", 2)],
            ],
        );
        assert_eq!(
            i.generators(),
            &[
                Monomial::from_pairs([(0, 2), (1, 1)]),
                Monomial::from_pairs([(0, 1), (1, 2)])
            ]
        );

        let fig2 = edge_ideal(&fixtures::d_fig2());
        let mut padded = fig2.generators().to_vec();
        padded.extend(fig2.generators().iter().take(4).cloned());
        padded.push(fig2.generators()[0].mul(&Monomial::var(3)));
        assert_eq!(minimalize(padded), fig2.generators());
    }

    #[test]
    fn radical_examples() {
        let i = edge_ideal(&fixtures::d_path());
        let r = i.radical();
        let expected = ideal(
            &["x1", "x2", "y1", "y2"],
            &[
                &[("y1", 1), ("x1", 1)],
                &[("x1", 1), ("x2", 1)],
                &[("x2", 1), ("y2", 1)],
            ],
        );
        assert_eq!(r, expected);
        assert_eq!(expected.radical(), expected);
        assert_eq!(
            ideal(&["x"], &[&[("x", 3)]]).radical(),
            ideal(&["x"], &[&[("x", 1)]])
        );
    }

    #[test]
    fn colon_examples() {
        let reg = ["x1", "x2", "y2"];
        let i = ideal(&reg, &[&[("x2", 1), ("y2", 1)], &[("x1", 1), ("x2", 3)]]);
        let y2 = Monomial::var(2);
        assert_eq!(i.colon(&y2), ideal(&reg, &[&[("x2", 1)]]));
        assert_eq!(i.colon(&Monomial::one()), i);
    }

    #[test]
    fn sum_examples() {
        let x = ideal(&["x"], &[&[("x", 1)]]);
        let y = ideal(&["y"], &[&[("y", 1)]]);
        let empty = MonomialIdeal::new(vec!["x".into()], []).unwrap();
        assert_eq!(x.sum(&empty), x);
        let s = x.sum(&y);
        assert_eq!(s.registry(), &["x", "y"]);
        assert_eq!(s, ideal(&["x", "y"], &[&[("x", 1)], &[("y", 1)]]));
    }

    #[test]
    fn artinian_witness_for_path() {
        // I(D[X]) for X = {x1, x2} plus (x1^3, x2^4).
        let d = fixtures::d_path();
        let sub = d.induced_subgraph_named(&["x1", "x2"]).unwrap();
        let powers = ideal(&["x1", "x2"], &[&[("x1", 3)], &[("x2", 4)]]);
        let j = edge_ideal(&sub).sum(&powers);
        let expected = ideal(
            &["x1", "x2"],
            &[&[("x1", 1), ("x2", 3)], &[("x1", 3)], &[("x2", 4)]],
        );
        assert_eq!(j, expected);
    }

    #[test]
    fn free_variable_bumps() {
        let i = edge_ideal(&fixtures::d_path());
        let names: Vec<&str> = i
            .free_variables()
            .into_iter()
            .map(|v| i.registry()[v as usize].as_str())
            .collect();
        assert_eq!(names, vec!["y1", "y2"]);
        let y1 = i.var("y1").unwrap();
        let bumped = i.bump_free_variable(y1, 2).unwrap();
        let expected = ideal(
            &["x1", "x2", "y1", "y2"],
            &[
                &[("y1", 3), ("x1", 2)],
                &[("x1", 1), ("x2", 3)],
                &[("x2", 1), ("y2", 1)],
            ],
        );
        assert_eq!(bumped, expected);
        let x1 = i.var("x1").unwrap();
        assert_eq!(
            i.bump_free_variable(x1, 2),
            Err(Error::NotFree("x1".into()))
        );
    }

    #[test]
    fn rejects_bad_registries() {
        assert!(MonomialIdeal::new(vec!["x".into()], [Monomial::var(3)]).is_err());
        assert!(MonomialIdeal::new(vec!["x".into(), "x".into()], []).is_err());
    }
}
