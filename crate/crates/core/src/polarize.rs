//! Polarization of monomial ideals and the way back.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{Monomial, MonomialIdeal, Var};

/// Upper bound on the number of variables a polarization may create.
pub const POLARIZATION_VARIABLE_LIMIT: usize = 1 << 12;

/// Copy `copy` (starting at 1) of the original variable `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PolarizedVariable {
    pub base: Var,
    pub copy: u64,
}

/// A (partial) polarization together with the ideal it came from.
///
/// The registry lists the copies of each original variable contiguously in
/// original order: `x1_1, x1_2, ..., x2_1, ...`. Variables outside the
/// polarized set keep their original name and exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizedIdeal {
    ideal: MonomialIdeal,
    origin: MonomialIdeal,
    polarized: BTreeSet<Var>,
    variables: Vec<PolarizedVariable>,
    #[serde(skip)]
    index: BTreeMap<PolarizedVariable, Var>,
}

pub fn polarize_ideal(ideal: &MonomialIdeal) -> Result<PolarizedIdeal> {
    let all = (0..ideal.var_count() as Var).collect();
    polarize_subset(ideal, all, true)
}

/// Splits powers only of the variables in `subset`.
pub fn partial_polarize(ideal: &MonomialIdeal, subset: &BTreeSet<Var>) -> Result<PolarizedIdeal> {
    if let Some(&bad) = subset.iter().find(|&&v| v as usize >= ideal.var_count()) {
        return Err(Error::InvalidArgument(format!(
            "variable index {bad} is not in the ring"
        )));
    }
    polarize_subset(ideal, subset.clone(), false)
}

fn polarize_subset(
    ideal: &MonomialIdeal,
    polarized: BTreeSet<Var>,
    full: bool,
) -> Result<PolarizedIdeal> {
    let max_exp = ideal.max_exponents();
    let mut registry = Vec::new();
    let mut variables = Vec::new();
    let mut first_copy = Vec::with_capacity(ideal.var_count());
    for (v, name) in ideal.registry().iter().enumerate() {
        let v = v as Var;
        first_copy.push(registry.len() as Var);
        if polarized.contains(&v) {
            let copies = max_exp[v as usize].max(1);
            let total = registry.len() as u64 + copies;
            if total > POLARIZATION_VARIABLE_LIMIT as u64 {
                return Err(Error::cap(
                    "polarized variables",
                    POLARIZATION_VARIABLE_LIMIT,
                    usize::try_from(total).unwrap_or(usize::MAX),
                ));
            }
            for j in 1..=copies {
                registry.push(format!("{name}_{j}"));
                variables.push(PolarizedVariable { base: v, copy: j });
            }
        } else {
            debug_assert!(!full);
            registry.push(name.clone());
            variables.push(PolarizedVariable { base: v, copy: 1 });
        }
    }
    let gens = ideal.generators().iter().map(|g| {
        let mut pairs = Vec::new();
        for &(v, e) in g.exponents() {
            let start = first_copy[v as usize];
            if polarized.contains(&v) {
                pairs.extend((0..e as Var).map(|j| (start + j, 1)));
            } else {
                pairs.push((start, e));
            }
        }
        Monomial::from_pairs(pairs)
    });
    let ideal_pol = MonomialIdeal::new_unchecked(registry, gens);
    let index = variables
        .iter()
        .enumerate()
        .map(|(i, &pv)| (pv, i as Var))
        .collect();
    Ok(PolarizedIdeal {
        ideal: ideal_pol,
        origin: ideal.clone(),
        polarized,
        variables,
        index,
    })
}

/// The prime of the original ring obtained by forgetting copy indices.
pub fn depolarize_variable_set(vars: impl IntoIterator<Item = PolarizedVariable>) -> BTreeSet<Var> {
    vars.into_iter().map(|pv| pv.base).collect()
}

impl PolarizedIdeal {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn origin(&self) -> &MonomialIdeal {
        &self.origin
    }

    pub fn polarized_set(&self) -> &BTreeSet<Var> {
        &self.polarized
    }

    /// Meaning of each variable of the polarized registry.
    pub fn variables(&self) -> &[PolarizedVariable] {
        &self.variables
    }

    pub fn variable(&self, v: Var) -> PolarizedVariable {
        self.variables[v as usize]
    }

    /// Registry index of `base_copy`, if that copy exists.
    pub fn index_of(&self, base: Var, copy: u64) -> Option<Var> {
        self.index.get(&PolarizedVariable { base, copy }).copied()
    }

    /// How many more variables the polarized ring has than the original one.
    pub fn extra_variable_count(&self) -> usize {
        self.variables.len() - self.origin.var_count()
    }

    /// Depolarizes a set of polarized registry indices.
    pub fn depolarize_indices(&self, vars: impl IntoIterator<Item = Var>) -> BTreeSet<Var> {
        depolarize_variable_set(vars.into_iter().map(|v| self.variables[v as usize]))
    }

    /// Applies `x_{i,j} -> x_i` to every generator and minimalizes.
    pub fn depolarize(&self) -> MonomialIdeal {
        let gens = self
            .ideal
            .generators()
            .iter()
            .map(|g| g.rename(|v| self.variables[v as usize].base));
        MonomialIdeal::new_unchecked(self.origin.registry().to_vec(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ideal::edge_ideal;

    fn names(p: &PolarizedIdeal, set: &BTreeSet<Var>) -> Vec<String> {
        set.iter()
            .map(|&v| p.origin().registry()[v as usize].clone())
            .collect()
    }

    #[test]
    fn polarizes_path_ideal() {
        let p = polarize_ideal(&edge_ideal(&fixtures::d_path())).unwrap();
        assert_eq!(
            p.ideal().registry(),
            &["x1_1", "x1_2", "x2_1", "x2_2", "x2_3", "y1_1", "y2_1"]
        );
        let expected = MonomialIdeal::from_named(
            p.ideal()
                .registry()
                .iter()
                .map(String::as_str)
                .collect::<Vec<_>>()
                .as_slice(),
            &[
                &[("y1_1", 1), ("x1_1", 1), ("x1_2", 1)],
                &[("x1_1", 1), ("x2_1", 1), ("x2_2", 1), ("x2_3", 1)],
                &[("x2_1", 1), ("y2_1", 1)],
            ],
        )
        .unwrap();
        assert_eq!(p.ideal(), &expected);
        assert!(p.ideal().is_squarefree());
        assert_eq!(p.depolarize(), *p.origin());
    }

    #[test]
    fn polarizes_pure_power_and_squarefree() {
        let cube = MonomialIdeal::from_named(&["x"], &[&[("x", 3)]]).unwrap();
        let p = polarize_ideal(&cube).unwrap();
        assert_eq!(p.ideal().registry(), &["x_1", "x_2", "x_3"]);
        assert_eq!(p.ideal().generators(), &[Monomial::squarefree([0, 1, 2])]);

        let sq = edge_ideal(&fixtures::d_fig2()).radical();
        let p = polarize_ideal(&sq).unwrap();
        assert_eq!(p.ideal().generators(), sq.generators());
        assert!(p.variables().iter().all(|pv| pv.copy == 1));
    }

    #[test]
    fn unused_variables_keep_one_copy() {
        let i = MonomialIdeal::from_named(&["x", "y"], &[&[("x", 2)]]).unwrap();
        let p = polarize_ideal(&i).unwrap();
        assert_eq!(p.ideal().registry(), &["x_1", "x_2", "y_1"]);
        assert_eq!(p.extra_variable_count(), 1);
    }

    #[test]
    fn partial_polarization() {
        let i =
            MonomialIdeal::from_named(&["x", "y"], &[&[("x", 2), ("y", 1)], &[("y", 2)]]).unwrap();
        let none = partial_polarize(&i, &BTreeSet::new()).unwrap();
        assert_eq!(none.ideal(), &i);
        let px = partial_polarize(&i, &BTreeSet::from([0])).unwrap();
        let expected = MonomialIdeal::from_named(
            &["x_1", "x_2", "y"],
            &[&[("x_1", 1), ("x_2", 1), ("y", 1)], &[("y", 2)]],
        )
        .unwrap();
        assert_eq!(px.ideal(), &expected);
        assert_eq!(px.depolarize(), i);
        assert!(partial_polarize(&i, &BTreeSet::from([5])).is_err());
    }

    #[test]
    fn depolarizes_covers_of_path() {
        let p = polarize_ideal(&edge_ideal(&fixtures::d_path())).unwrap();
        let r = p.ideal();
        let set = |ns: &[&str]| p.depolarize_indices(ns.iter().map(|n| r.var(n).unwrap()));
        assert_eq!(names(&p, &set(&["x1_1", "x2_1"])), vec!["x1", "x2"]);
        assert_eq!(
            names(&p, &set(&["y1_1", "x2_2", "y2_1"])),
            vec!["x2", "y1", "y2"]
        );
        assert!(depolarize_variable_set([]).is_empty());
        assert_eq!(p.index_of(1, 3), r.var("x2_3").ok());
        assert_eq!(p.index_of(1, 4), None);
    }

    #[test]
    fn refuses_huge_exponents() {
        let i = MonomialIdeal::from_named(&["x"], &[&[("x", 1 << 40)]]).unwrap();
        assert!(polarize_ideal(&i).unwrap_err().is_cap_exceeded());
    }
}
