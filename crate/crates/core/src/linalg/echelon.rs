//! Incremental reduced row echelon form over Q.
//!
//! Rows are kept fully reduced: every stored row has a leading 1 in its pivot
//! column and zeros in every other pivot column. This makes reduction of a new
//! vector a single pass, and makes the stored basis canonical for its span.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::{axpy, scale, Rational, SparseVec};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// The canonical basis of the span, ordered by pivot column.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().cloned().collect()
    }

    /// Subtracts the stored rows from `v`; the remainder has no pivot entries.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(k, x)| (*k, x.clone()))
            .collect();
        for (p, c) in hits {
            axpy(&mut out, &(-c), &self.rows[&p]);
        }
        out
    }

    /// Like [`reduce`](Self::reduce) but also returns the coefficients `c_p`
    /// with `v = remainder + sum c_p row_p`.
    pub fn reduce_with_coords(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let coords: SparseVec = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(k, x)| (*k, x.clone()))
            .collect();
        let mut out = v.clone();
        for (p, c) in &coords {
            axpy(&mut out, &(-c), &self.rows[p]);
        }
        (out, coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the new pivot column if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (&p, lead) = r.iter().next()?;
        let inv = Rational::one() / lead;
        let r = scale(&r, &inv);
        let touched: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, row)| row.contains_key(&p))
            .map(|(k, _)| *k)
            .collect();
        for k in touched {
            let c = self.rows[&k][&p].clone();
            let row = self.rows.get_mut(&k).expect("pivot row");
            axpy(row, &(-c), &r);
        }
        self.rows.insert(p, r);
        Some(p)
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.values().all(|v| self.contains(v))
    }

    pub fn from_vectors<'a>(ncols: usize, vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Echelon::new(ncols);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn is_zero_space(&self) -> bool {
        self.rows.is_empty()
    }

    /// Entry of the row with the given pivot, or zero.
    pub fn entry(&self, pivot: usize, col: usize) -> Rational {
        self.rows
            .get(&pivot)
            .and_then(|r| r.get(&col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    fn sv(xs: &[(usize, i64)]) -> SparseVec {
        xs.iter().map(|(k, x)| (*k, q(*x))).collect()
    }

    #[test]
    fn canonical_basis_is_order_independent() {
        let a = Echelon::from_vectors(3, [&sv(&[(0, 1), (1, 2)]), &sv(&[(1, 1), (2, 1)])]);
        let b = Echelon::from_vectors(3, [&sv(&[(1, 1), (2, 1)]), &sv(&[(0, 2), (1, 6), (2, 2)])]);
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert!(a.contains(&sv(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!a.contains(&sv(&[(2, 1)])));
    }
}
