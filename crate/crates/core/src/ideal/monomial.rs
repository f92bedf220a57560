use std::cmp::Ordering;

use serde::Serialize;

/// Index of a variable in an ideal's registry.
pub type Var = u32;

/// A monomial stored as sorted `(variable, exponent)` pairs with every
/// exponent at least 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial {
    exps: Vec<(Var, u64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn power(v: Var, e: u64) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u64)>) -> Self {
        let mut exps: Vec<(Var, u64)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u64)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le = le.checked_add(e).expect("exponent overflow"),
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    /// Like [`Monomial::from_pairs`] but `None` when the total degree does
    /// not fit in a `u64`.
    pub fn try_from_pairs(pairs: impl IntoIterator<Item = (Var, u64)>) -> Option<Self> {
        let pairs: Vec<(Var, u64)> = pairs.into_iter().collect();
        pairs
            .iter()
            .try_fold(0u64, |acc, &(_, e)| acc.checked_add(e))?;
        Some(Self::from_pairs(pairs))
    }

    /// Squarefree monomial on the given variables.
    pub fn squarefree(vars: impl IntoIterator<Item = Var>) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn exponents(&self) -> &[(Var, u64)] {
        &self.exps
    }

    pub fn exponent(&self, v: Var) -> u64 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.exps.last().map(|&(v, _)| v)
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut it = other.exps.iter().peekable();
        'outer: for &(v, e) in &self.exps {
            while let Some(&&(w, f)) = it.peek() {
                match w.cmp(&v) {
                    Ordering::Less => {
                        it.next();
                    }
                    Ordering::Equal => {
                        if f < e {
                            return false;
                        }
                        it.next();
                        continue 'outer;
                    }
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    fn merge_with(&self, other: &Monomial, f: impl Fn(u64, u64) -> u64) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let (v, ea, eb) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        i += 1;
                        (va, ea, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, 0, eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, ea, eb)
                    }
                },
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea, 0)
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (None, None) => unreachable!(),
            };
            let e = f(ea, eb);
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial { exps: out }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, |a, b| a.checked_add(b).expect("exponent overflow"))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, u64::min)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, u64::max)
    }

    /// `self / gcd(self, other)`: the part of `self` not absorbed by `other`.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, |a, b| a.saturating_sub(b))
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.quotient_by_gcd(other))
    }

    /// Applies a variable substitution; exponents of variables mapped to
    /// the same target add up.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }

    /// Lexicographic comparison with lower variable indices ranking higher:
    /// `Greater` means `self` is lex-larger.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a.0 != b.0 {
                // whoever has the smaller variable has a positive exponent there
                return if a.0 < b.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }

    /// Canonical generator order: ascending degree, then lex-larger first.
    pub fn graded_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.lex_cmp(self))
    }
}
