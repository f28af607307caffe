//! Finite-dimensional (graded) Lie algebras given by structure constants.

use std::collections::BTreeMap;


use super::report::StructureReport;
use crate::error::{Error, Result};
use crate::linalg::{axpy, q, Echelon, QMatrix, SparseVec};

/// Lie algebra with a homogeneous basis.
///
/// Degrees default to zero, in which case the bracket is an ordinary Lie
/// bracket. With nonzero degrees it is a graded Lie bracket: antisymmetry and
/// Jacobi carry the Koszul sign `(-1)^(|x||y|)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    degrees: Vec<i32>,
    /// `[e_i, e_j]` for `i <= j`; the diagonal only for odd `e_i`.
    table: BTreeMap<(usize, usize), SparseVec>,
}

fn koszul(a: i32, b: i32) -> bool {
    (a * b).rem_euclid(2) == 1
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::with_labels((0..dim).map(|i| format!("e{i}")).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let degrees = vec![0; labels.len()];
        LieAlgebra {
            labels,
            degrees,
            table: BTreeMap::new(),
        }
    }

    pub fn graded(labels: Vec<String>, degrees: Vec<i32>) -> Self {
        assert_eq!(labels.len(), degrees.len());
        LieAlgebra {
            labels,
            degrees,
            table: BTreeMap::new(),
        }
    }

    /// Builds an ungraded algebra from `(i, j, [e_i, e_j])` with `i < j`.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, SparseVec)]) -> Result<Self> {
        let mut g = LieAlgebra::abelian(dim);
        for (i, j, v) in brackets {
            g.set_bracket(*i, *j, v.clone())?;
        }
        Ok(g)
    }

    /// Sets `[e_i, e_j]`; `[e_j, e_i]` follows by graded antisymmetry.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n || v.keys().any(|&k| k >= n) {
            return Err(Error::Dimension(format!(
                "bracket [{i}, {j}] out of range for dimension {n}"
            )));
        }
        if i == j && !koszul(self.degrees[i], self.degrees[i]) {
            if v.is_empty() {
                return Ok(());
            }
            return Err(Error::InvalidStructure(format!(
                "[e{i}, e{i}] must vanish for an even basis vector"
            )));
        }
        let (a, b, v) = if i <= j {
            (i, j, v)
        } else {
            let s = if koszul(self.degrees[i], self.degrees[j]) { q(1) } else { q(-1) };
            (j, i, crate::linalg::scale(&v, &s))
        };
        if v.is_empty() {
            self.table.remove(&(a, b));
        } else {
            self.table.insert((a, b), v);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.iter().any(|&d| d != 0)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// Stored brackets `(i, j, [e_i, e_j])` with `i <= j`.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> {
        self.table.iter().map(|((i, j), v)| (*i, *j, v))
    }

    /// `[e_i, e_j]` for any ordering of the indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        if i <= j {
            return self.table.get(&(i, j)).cloned().unwrap_or_default();
        }
        match self.table.get(&(j, i)) {
            None => SparseVec::new(),
            Some(v) => {
                let s = if koszul(self.degrees[i], self.degrees[j]) { q(1) } else { q(-1) };
                crate::linalg::scale(v, &s)
            }
        }
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let v = self.bracket_basis(*i, *j);
                if !v.is_empty() {
                    axpy(&mut out, &(a * b), &v);
                }
            }
        }
        out
    }

    /// Matrix of `ad x`.
    pub fn ad(&self, x: &SparseVec) -> QMatrix {
        let cols: Vec<SparseVec> = (0..self.dim())
            .map(|j| self.bracket(x, &unit(j)))
            .collect();
        QMatrix::from_columns(self.dim(), &cols)
    }

    /// Basis vectors of degree `d`.
    pub fn degree_basis(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Checks antisymmetry, grading and Jacobi on all basis triples.
    pub fn check(&self) -> StructureReport {
        let mut rep = StructureReport::default();
        let n = self.dim();
        for ((i, j), v) in &self.table {
            let d = self.degrees[*i] + self.degrees[*j];
            if let Some(k) = v.keys().find(|&&k| self.degrees[k] != d) {
                rep.fail("grading", vec![*i, *j], format!("[e{i}, e{j}] has a component on e{k}"));
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let d = self.jacobi_defect(i, j, k);
                    if !d.is_empty() {
                        rep.fail("jacobi", vec![i, j, k], self.fmt(&d));
                    }
                }
            }
        }
        rep
    }

    /// `[x,[y,z]] - [[x,y],z] - (-1)^(|x||y|) [y,[x,z]]` on basis vectors.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let (x, y, z) = (unit(i), unit(j), unit(k));
        let mut d = self.bracket(&x, &self.bracket(&y, &z));
        axpy(&mut d, &q(-1), &self.bracket(&self.bracket(&x, &y), &z));
        let s = if koszul(self.degrees[i], self.degrees[j]) { q(1) } else { q(-1) };
        axpy(&mut d, &s, &self.bracket(&y, &self.bracket(&x, &z)));
        d
    }

    pub fn fmt(&self, v: &SparseVec) -> String {
        crate::linalg::fmt_sparse(v, |k| self.labels[k].clone())
    }

    /// Direct sum; the second summand's indices are shifted by `self.dim()`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut degrees = self.degrees.clone();
        degrees.extend(other.degrees.iter().copied());
        let mut table = self.table.clone();
        for ((i, j), v) in &other.table {
            table.insert((i + n, j + n), v.iter().map(|(k, x)| (k + n, x.clone())).collect());
        }
        LieAlgebra {
            labels,
            degrees,
            table,
        }
    }

    /// The algebra in the basis given by the columns of `p` (invertible).
    pub fn change_basis(&self, p: &QMatrix, labels: Vec<String>) -> Result<LieAlgebra> {
        let cols = p.columns();
        let mut out = LieAlgebra::abelian(cols.len());
        out.labels = labels;
        out.degrees = cols
            .iter()
            .map(|c| c.keys().next().map_or(0, |&k| self.degrees[k]))
            .collect();
        self.restrict_to(&cols, p, &mut out)?;
        Ok(out)
    }

    /// Subalgebra spanned by `basis`, which must be closed under the bracket.
    /// Returns the algebra and the inclusion matrix.
    pub fn subalgebra(&self, basis: &[SparseVec], labels: Vec<String>) -> Result<(LieAlgebra, QMatrix)> {
        let p = QMatrix::from_columns(self.dim(), basis);
        if p.rank() != basis.len() {
            return Err(Error::InvalidStructure("subalgebra basis is dependent".into()));
        }
        let mut out = LieAlgebra::abelian(basis.len());
        out.labels = labels;
        out.degrees = basis
            .iter()
            .map(|c| c.keys().next().map_or(0, |&k| self.degrees[k]))
            .collect();
        self.restrict_to(basis, &p, &mut out)?;
        Ok((out, p))
    }

    fn restrict_to(&self, cols: &[SparseVec], p: &QMatrix, out: &mut LieAlgebra) -> Result<()> {
        for a in 0..cols.len() {
            for b in a..cols.len() {
                let v = self.bracket(&cols[a], &cols[b]);
                if v.is_empty() {
                    continue;
                }
                let x = p.solve_sparse(&v).ok_or_else(|| {
                    Error::InvalidStructure(format!(
                        "bracket of basis vectors {a} and {b} leaves the span"
                    ))
                })?;
                out.set_bracket(a, b, x)?;
            }
        }
        Ok(())
    }

    /// Whether `f` (columns = images of basis vectors) is a Lie homomorphism
    /// `self -> target`; returns the first failing pair.
    pub fn hom_defect(&self, target: &LieAlgebra, f: &QMatrix) -> Option<(usize, usize, SparseVec)> {
        let imgs = f.columns();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let mut d = f.apply(&self.bracket_basis(i, j));
                axpy(&mut d, &q(-1), &target.bracket(&imgs[i], &imgs[j]));
                if !d.is_empty() {
                    return Some((i, j, d));
                }
            }
        }
        None
    }

    /// Lower central series dimensions until they stabilize.
    pub fn lower_central_dims(&self) -> Vec<usize> {
        let n = self.dim();
        let mut cur: Vec<SparseVec> = (0..n).map(unit).collect();
        let mut dims = vec![n];
        loop {
            let mut e = Echelon::new(n);
            for x in &cur {
                for j in 0..n {
                    e.insert(&self.bracket(x, &unit(j)));
                }
            }
            let next = e.basis();
            if next.len() == *dims.last().unwrap() || next.is_empty() {
                dims.push(next.len());
                return dims;
            }
            dims.push(next.len());
            cur = next;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_dims().last() == Some(&0)
    }
}

/// Standard basis vector.
pub fn unit(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, q(1));
    v
}

/// `(-ad b)^m (a)`, the iterated bracket `[[a, b], ..., b]`.
pub fn ad_pow(g: &LieAlgebra, a: &SparseVec, b: &SparseVec, m: usize) -> SparseVec {
    let mut x = a.clone();
    for _ in 0..m {
        if x.is_empty() {
            break;
        }
        x = g.bracket(&x, b);
    }
    x
}
