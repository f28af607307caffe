//! Sparse rational matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::echelon::Echelon;
use super::rational::{add_entry, axpy, Rational, SparseVec};
use crate::error::{Error, Result};

/// Row-major sparse matrix over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

/// Result of [`QMatrix::cokernel_data`].
#[derive(Clone, Debug, PartialEq)]
pub struct Cokernel {
    pub dim: usize,
    /// `dim x rows(M)`, vanishes on the image and sends `e_{reps[k]}` to `e_k`.
    pub proj: QMatrix,
    /// Ambient basis vectors whose classes form a basis of the quotient.
    pub reps: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix {
            nrows,
            ncols,
            rows: vec![SparseVec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, Rational::one());
        }
        m
    }

    pub fn from_dense(nrows: usize, ncols: usize, data: &[Vec<Rational>]) -> Result<Self> {
        if data.len() != nrows || data.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension(format!(
                "expected a {nrows}x{ncols} matrix"
            )));
        }
        let mut m = QMatrix::zeros(nrows, ncols);
        for (i, r) in data.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_i64(data: &[&[i64]]) -> Self {
        let nrows = data.len();
        let ncols = data.first().map_or(0, |r| r.len());
        let mut m = QMatrix::zeros(nrows, ncols);
        for (i, r) in data.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged matrix literal");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, Rational::from_integer((*x).into()));
            }
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.keys().all(|&k| k < ncols)));
        QMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let mut m = QMatrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c {
                assert!(*i < nrows, "column entry out of range");
                m.rows[*i].insert(j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if x.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Rational) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        add_entry(&mut self.rows[i], j, x);
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&j).map(|x| (i, x.clone())))
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                cols[*j].insert(i, x.clone());
            }
        }
        cols
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: self.columns(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x.clone())))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, other.nrows, "matrix product dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = SparseVec::new();
                for (k, x) in r {
                    axpy(&mut out, x, &other.rows[*k]);
                }
                out
            })
            .collect();
        QMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (i, r) in other.rows.iter().enumerate() {
            axpy(&mut out.rows[i], &Rational::one(), r);
        }
        out
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (i, r) in other.rows.iter().enumerate() {
            axpy(&mut out.rows[i], &-Rational::one(), r);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| super::rational::scale(r, c)).collect(),
        }
    }

    /// `M v` for a sparse column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = Rational::zero();
            if r.len() < v.len() {
                for (j, x) in r {
                    if let Some(y) = v.get(j) {
                        acc += x * y;
                    }
                }
            } else {
                for (j, y) in v {
                    if let Some(x) = r.get(j) {
                        acc += x * y;
                    }
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        self.rows
            .iter()
            .map(|r| r.iter().map(|(j, x)| x * &v[*j]).sum())
            .collect()
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &QMatrix) -> QMatrix {
        let mut rows = self.rows.clone();
        for r in &other.rows {
            rows.push(r.iter().map(|(j, x)| (j + self.ncols, x.clone())).collect());
        }
        QMatrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols + other.ncols,
            rows,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.nrows, other.nrows);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, x)| (j + self.ncols, x.clone())));
                r
            })
            .collect();
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols + other.ncols,
            rows,
        }
    }

    /// Restriction to the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> QMatrix {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .filter_map(|(j, x)| pos.get(j).map(|k| (*k, x.clone())))
                    .collect()
            })
            .collect();
        QMatrix {
            nrows: self.nrows,
            ncols: cols.len(),
            rows,
        }
    }

    pub fn row_echelon(&self) -> Echelon {
        Echelon::from_vectors(self.ncols, self.rows.iter())
    }

    pub fn rank(&self) -> usize {
        if self.nrows <= self.ncols {
            self.row_echelon().rank()
        } else {
            self.transpose().row_echelon().rank()
        }
    }

    /// Columns form a basis of the kernel.
    pub fn kernel_basis(&self) -> QMatrix {
        let e = self.row_echelon();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !e.is_pivot(*c)).collect();
        let pivots: Vec<usize> = e.pivots().collect();
        let cols: Vec<SparseVec> = free
            .iter()
            .map(|&f| {
                let mut v = SparseVec::new();
                v.insert(f, Rational::one());
                for &p in &pivots {
                    let x = e.entry(p, f);
                    if !x.is_zero() {
                        v.insert(p, -x);
                    }
                }
                v
            })
            .collect();
        QMatrix::from_columns(self.ncols, &cols)
    }

    /// Quotient of the target by the column span, with standard-basis
    /// representatives for the classes.
    pub fn cokernel_data(&self) -> Cokernel {
        let e = self.transpose().row_echelon();
        let reps: Vec<usize> = (0..self.nrows).filter(|r| !e.is_pivot(*r)).collect();
        let pos: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(k, r)| (*r, k)).collect();
        let mut proj = QMatrix::zeros(reps.len(), self.nrows);
        for r in 0..self.nrows {
            match pos.get(&r) {
                Some(&k) => proj.set(k, r, Rational::one()),
                None => {
                    for (c, x) in e.row(r).expect("pivot row") {
                        if let Some(&k) = pos.get(c) {
                            proj.set(k, r, -x.clone());
                        }
                    }
                }
            }
        }
        Cokernel {
            dim: reps.len(),
            proj,
            reps,
        }
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.nrows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.nrows
            )));
        }
        let n = self.ncols;
        let mut e = Echelon::new(n + 1);
        for (r, bi) in self.rows.iter().zip(b) {
            let mut aug = r.clone();
            if !bi.is_zero() {
                aug.insert(n, bi.clone());
            }
            e.insert(&aug);
        }
        if e.is_pivot(n) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); n];
        for p in e.pivots() {
            x[p] = e.entry(p, n);
        }
        Ok(Some(x))
    }

    /// Sparse variant of [`solve`](Self::solve).
    pub fn solve_sparse(&self, b: &SparseVec) -> Option<SparseVec> {
        let n = self.ncols;
        let mut e = Echelon::new(n + 1);
        for (i, r) in self.rows.iter().enumerate() {
            let mut aug = r.clone();
            if let Some(bi) = b.get(&i) {
                aug.insert(n, bi.clone());
            }
            e.insert(&aug);
        }
        if e.is_pivot(n) {
            return None;
        }
        Some(
            e.pivots()
                .map(|p| (p, e.entry(p, n)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(QMatrix::identity(2).kernel_basis().ncols(), 0);
        assert_eq!(QMatrix::zeros(1, 3).kernel_basis().ncols(), 3);
        let m = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.ncols(), 1);
        let v = k.column(0);
        // proportional to (-2, 1)
        assert_eq!(&v[&0] * q(1), &v[&1] * q(-2));
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn cokernel_examples() {
        let c = QMatrix::identity(3).cokernel_data();
        assert_eq!(c.dim, 0);
        let c = QMatrix::zeros(3, 1).cokernel_data();
        assert_eq!(c.dim, 3);
        assert_eq!(c.proj, QMatrix::identity(3));
        let m = QMatrix::from_i64(&[&[1], &[0], &[0]]);
        let c = m.cokernel_data();
        assert_eq!(c.dim, 2);
        assert!(c.proj.mul(&m).is_zero());
        assert_eq!(c.proj.rank(), 2);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-1)];
        assert_eq!(QMatrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        let m = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let x = m.solve(&[q(1), q(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + q(2) * &x[1], q(1));
        assert_eq!(m.solve(&[q(1), q(1)]).unwrap(), None);
        assert!(m.solve(&[q(1)]).is_err());
    }
}
