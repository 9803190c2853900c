//! Sparse exact linear algebra: rank and solving against the row span.
//!
//! Rank is computed fraction-free: rows are cleared to integers, kept
//! primitive (content divided out after every cross-multiplication step), and
//! reduced into an echelon basis. Solving works over rationals and records
//! the row weights of every eliminated equation, so a factored system can be
//! reused for many right-hand sides.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lincomb::{Key, LinComb};
use crate::rational::Rational;

/// A list of sparse rows over a shared, canonically ordered column domain.
#[derive(Clone)]
pub struct SparseMatrix<K: Key> {
    rows: Vec<LinComb<K>>,
}

impl<K: Key> SparseMatrix<K> {
    pub fn new(rows: Vec<LinComb<K>>) -> Self {
        SparseMatrix { rows }
    }

    pub fn rows(&self) -> &[LinComb<K>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        // Column keys in canonical order.
        let mut cols: BTreeMap<&K, usize> = BTreeMap::new();
        for row in &self.rows {
            for (k, _) in row.iter() {
                let next = cols.len();
                cols.entry(k).or_insert(next);
            }
        }
        // Canonical order, not insertion order.
        for (i, (_, v)) in cols.iter_mut().enumerate() {
            *v = i;
        }
        let cols = cols; // freeze

        // Echelon basis keyed by leading column.
        let mut basis: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
        for row in &self.rows {
            let mut r = integer_row(row, &cols);
            loop {
                normalize(&mut r);
                let Some(&(lead, _)) = r.first() else { break };
                match basis.get(&lead) {
                    None => {
                        basis.insert(lead, r);
                        break;
                    }
                    Some(pivot) => {
                        r = cross_eliminate(&r, pivot);
                    }
                }
            }
        }
        basis.len()
    }

    /// Finds `x` with `sum_i x_i * row_i = rhs`, or `NoSolution`.
    ///
    /// Pivots are chosen in first-come order (canonical column-key order,
    /// then lowest row index), and free coordinates are set to zero, so the
    /// answer is deterministic even when the system is underdetermined.
    pub fn solve(&self, rhs: &LinComb<K>) -> Result<LinComb<usize>> {
        self.factor().solve(rhs)
    }

    /// Eliminates once; the result can solve many right-hand sides.
    pub fn factor(&self) -> FactoredSystem<K> {
        // Transpose: one equation per column key, unknowns = row indices.
        let mut equations: BTreeMap<K, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, c) in row.iter() {
                equations.entry(k.clone()).or_default().insert(i, c.clone());
            }
        }

        let mut pivots: Vec<Pivot<K>> = Vec::new();
        let mut consistency: Vec<BTreeMap<K, Rational>> = Vec::new();
        for (key, coeffs) in equations {
            let mut coeffs = coeffs;
            let mut weights: BTreeMap<K, Rational> = BTreeMap::new();
            weights.insert(key, Rational::one());
            for p in &pivots {
                let Some(c) = coeffs.get(&p.unknown).cloned() else { continue };
                let factor = &c / &p.coeffs[&p.unknown];
                sub_scaled(&mut coeffs, &p.coeffs, &factor);
                sub_scaled(&mut weights, &p.weights, &factor);
            }
            match coeffs.keys().next().copied() {
                Some(unknown) => pivots.push(Pivot { unknown, coeffs, weights }),
                None => consistency.push(weights),
            }
        }
        FactoredSystem { num_unknowns: self.rows.len(), pivots, consistency }
    }
}

struct Pivot<K: Key> {
    /// Row index this pivot determines.
    unknown: usize,
    /// Reduced equation coefficients over row indices.
    coeffs: BTreeMap<usize, Rational>,
    /// The eliminated equation as a combination of original column equations.
    weights: BTreeMap<K, Rational>,
}

/// An eliminated transpose system, reusable across right-hand sides.
pub struct FactoredSystem<K: Key> {
    num_unknowns: usize,
    pivots: Vec<Pivot<K>>,
    consistency: Vec<BTreeMap<K, Rational>>,
}

impl<K: Key> FactoredSystem<K> {
    pub fn solve(&self, rhs: &LinComb<K>) -> Result<LinComb<usize>> {
        // Keys never seen in the matrix give equations 0 = rhs[k].
        let known: std::collections::BTreeSet<&K> = self
            .pivots
            .iter()
            .flat_map(|p| p.weights.keys())
            .chain(self.consistency.iter().flat_map(|w| w.keys()))
            .collect();
        for (k, c) in rhs.iter() {
            if !c.is_zero() && !known.contains(k) {
                return Err(Error::NoSolution);
            }
        }
        for weights in &self.consistency {
            if !apply_weights(weights, rhs).is_zero() {
                return Err(Error::NoSolution);
            }
        }
        // Back-substitution in reverse pivot order; free unknowns are zero.
        let mut x: Vec<Rational> = vec![Rational::zero(); self.num_unknowns];
        for p in self.pivots.iter().rev() {
            let mut v = apply_weights(&p.weights, rhs);
            for (&i, c) in &p.coeffs {
                if i != p.unknown {
                    v -= &(c * &x[i]);
                }
            }
            x[p.unknown] = &v / &p.coeffs[&p.unknown];
        }
        Ok(LinComb::from_pairs(x.into_iter().enumerate()))
    }
}

fn apply_weights<K: Key>(weights: &BTreeMap<K, Rational>, rhs: &LinComb<K>) -> Rational {
    let mut v = Rational::zero();
    for (k, w) in weights {
        let c = rhs.coeff(k);
        if !c.is_zero() {
            v += &(w * &c);
        }
    }
    v
}

fn sub_scaled<I: Ord + Clone>(
    target: &mut BTreeMap<I, Rational>,
    source: &BTreeMap<I, Rational>,
    factor: &Rational,
) {
    for (i, c) in source {
        let delta = c * factor;
        match target.entry(i.clone()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !delta.is_zero() {
                    v.insert(-delta);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() -= &delta;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// Clears denominators: the row times the lcm of its denominators, as a
/// sorted sparse integer vector. Row scaling does not change the rank.
fn integer_row<K: Key>(row: &LinComb<K>, cols: &BTreeMap<&K, usize>) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::from(1);
    for (_, c) in row.iter() {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(k, c)| (cols[k], c.numer() * (&lcm / c.denom())))
        .collect();
    out.sort_by_key(|&(i, _)| i);
    out
}

/// Divides out the content and makes the leading entry positive.
fn normalize(row: &mut Vec<(usize, BigInt)>) {
    row.retain(|(_, v)| !v.is_zero());
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// `pivot_lead * row - row_lead * pivot`, removing the shared leading column.
fn cross_eliminate(
    row: &[(usize, BigInt)],
    pivot: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        match (row.get(i), pivot.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = a * vi - b * vj;
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, a * vi));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                out.push((*cj, -(b * vj)));
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, a * vi));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                out.push((*cj, -(b * vj)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
