//! Exact sparse row reduction for boundary matrices.
//!
//! Matrices arrive as sparse rows of `(column, ±1)` entries, which is all a
//! simplicial boundary map ever needs. Each row is reduced against earlier
//! rows until its last nonzero column is new; that column is its pivot.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Field;

pub(crate) type SparseRow = Vec<(usize, i8)>;

/// Pivot columns of the reduced rows, in row order. Rows that reduce to
/// zero contribute nothing, so the length is the rank.
pub(crate) fn pivot_columns(rows: &[SparseRow], cols: usize, field: Field) -> Vec<usize> {
    match field {
        Field::Prime(2) => pivots_f2(rows, cols),
        Field::Prime(p) => pivots_fp(rows, cols, p),
        Field::Rationals => pivots_q::<i128>(rows, cols).unwrap_or_else(|| {
            pivots_q::<BigInt>(rows, cols).expect("big integers never overflow")
        }),
    }
}

#[cfg(test)]
pub(crate) fn rank(rows: &[SparseRow], cols: usize, field: Field) -> usize {
    pivot_columns(rows, cols, field).len()
}

fn sorted_columns(row: &SparseRow) -> Vec<usize> {
    let mut r: Vec<usize> = row.iter().map(|&(c, _)| c).collect();
    r.sort_unstable();
    r
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn pivots_f2(rows: &[SparseRow], cols: usize) -> Vec<usize> {
    let mut owner: Vec<Option<Vec<usize>>> = vec![None; cols];
    let mut pivots = Vec::new();
    for row in rows {
        let mut r = sorted_columns(row);
        while let Some(&low) = r.last() {
            if let Some(p) = &owner[low] {
                r = symmetric_difference(&r, p);
            } else {
                pivots.push(low);
                owner[low] = Some(r);
                break;
            }
        }
    }
    pivots
}

/// Merges two sorted sparse rows column by column; `f` gets the two entries
/// of a column (either may be missing) and returns the new entry, `None`
/// for zero. Stops with `None` when `f` reports an overflow.
fn merge<T>(
    a: &[(usize, T)],
    b: &[(usize, T)],
    f: impl Fn(Option<&T>, Option<&T>) -> Option<Option<T>>,
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    loop {
        let (col, x, y) = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, Some(&x.1), Some(&y.1))
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                i += 1;
                (x.0, Some(&x.1), None)
            }
            (Some(x), None) => {
                i += 1;
                (x.0, Some(&x.1), None)
            }
            (_, Some(y)) => {
                j += 1;
                (y.0, None, Some(&y.1))
            }
            (None, None) => return Some(out),
        };
        if let Some(v) = f(x, y)? {
            out.push((col, v));
        }
    }
}

fn pivots_fp(rows: &[SparseRow], cols: usize, p: u64) -> Vec<usize> {
    let mut owner: Vec<Option<Vec<(usize, u64)>>> = vec![None; cols];
    let mut pivots = Vec::new();
    for row in rows {
        let mut r: Vec<(usize, u64)> = row
            .iter()
            .map(|&(c, s)| (c, if s > 0 { 1 } else { p - 1 }))
            .collect();
        r.sort_unstable();
        while let Some(&(low, lead)) = r.last() {
            if let Some(piv) = &owner[low] {
                // the pivot row ends in 1, so subtract `lead` times it
                r = merge(&r, piv, |x, y| {
                    let x = x.copied().unwrap_or(0);
                    let y = mul_mod(lead, y.copied().unwrap_or(0), p);
                    let v = (x + p - y) % p;
                    Some((v != 0).then_some(v))
                })
                .expect("modular arithmetic never overflows");
            } else {
                let inv = pow_mod(lead, p - 2, p);
                r.iter_mut().for_each(|(_, v)| *v = mul_mod(*v, inv, p));
                pivots.push(low);
                owner[low] = Some(r);
                break;
            }
        }
    }
    pivots
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Integer arithmetic for fraction-free elimination over the rationals.
trait Exact: Clone {
    fn from_sign(s: i8) -> Self;
    fn is_zero(&self) -> bool;
    /// `a * x - b * y`, or `None` on overflow.
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Exact for i128 {
    fn from_sign(s: i8) -> Self {
        s as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a as i128
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Exact for BigInt {
    fn from_sign(s: i8) -> Self {
        BigInt::from(s)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.abs(), other.abs());
        while !Zero::is_zero(&b) {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Fraction-free elimination: `r` becomes `a r - b p` with the last
/// entries cancelling, then is divided by the gcd of its entries.
fn pivots_q<T: Exact>(rows: &[SparseRow], cols: usize) -> Option<Vec<usize>> {
    let mut owner: Vec<Option<Vec<(usize, T)>>> = vec![None; cols];
    let mut pivots = Vec::new();
    for row in rows {
        let mut r: Vec<(usize, T)> = row.iter().map(|&(c, s)| (c, T::from_sign(s))).collect();
        r.sort_unstable_by_key(|e| e.0);
        while let Some((low, lead)) = r.last().cloned() {
            if let Some(piv) = &owner[low] {
                let plead = &piv.last().expect("pivot rows are nonempty").1;
                let g = plead.gcd(&lead);
                let (a, b) = (plead.div_exact(&g), lead.div_exact(&g));
                let zero = T::from_sign(0);
                r = merge(&r, piv, |x, y| {
                    let v = T::combine(&a, x.unwrap_or(&zero), &b, y.unwrap_or(&zero))?;
                    Some((!v.is_zero()).then_some(v))
                })?;
                let content = r.iter().fold(zero, |g, (_, v)| g.gcd(v));
                if !content.is_zero() && !content.is_one() {
                    r.iter_mut().for_each(|(_, v)| *v = v.div_exact(&content));
                }
            } else {
                pivots.push(low);
                owner[low] = Some(r);
                break;
            }
        }
    }
    Some(pivots)
}
