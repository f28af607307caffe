//! Finite-dimensional differential graded Lie algebras and pairs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lie::{unit, LieAlgebra, StructureReport};
use crate::linalg::{axpy, fmt_sparse, q, QMatrix, Rational, SparseVec};

/// A graded Lie algebra with a degree `+1` differential.
#[derive(Clone, Debug, PartialEq)]
pub struct DgLieAlgebra {
    pub algebra: LieAlgebra,
    pub d: QMatrix,
}

impl DgLieAlgebra {
    pub fn new(algebra: LieAlgebra, d: QMatrix) -> Result<Self> {
        let n = algebra.dim();
        if d.nrows() != n || d.ncols() != n {
            return Err(Error::Dimension(format!("differential must be {n}x{n}")));
        }
        Ok(DgLieAlgebra { algebra, d })
    }

    /// `∂ = 0`.
    pub fn formal(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        DgLieAlgebra {
            algebra,
            d: QMatrix::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Grading, `∂^2 = 0`, `deg ∂ = 1`, graded Jacobi and Leibniz.
    pub fn check(&self) -> StructureReport {
        let mut rep = StructureReport::default();
        rep.absorb("algebra", self.algebra.check());
        let n = self.dim();
        for (r, c, v) in self.d.entries() {
            if self.algebra.degree(r) != self.algebra.degree(c) + 1 {
                rep.fail("differential_degree", vec![c, r], v.to_string());
            }
        }
        let dd = self.d.mul(&self.d);
        for (r, c, v) in dd.entries() {
            rep.fail("d_squared", vec![c, r], v.to_string());
        }
        for x in 0..n {
            for y in x..n {
                let lhs = self.d.apply(&self.algebra.bracket_basis(x, y));
                let mut rhs = self.algebra.bracket(&self.d.column(x), &unit(y));
                let s = if self.algebra.degree(x) % 2 == 0 { q(1) } else { q(-1) };
                axpy(&mut rhs, &s, &self.algebra.bracket(&unit(x), &self.d.column(y)));
                let mut diff = lhs;
                axpy(&mut diff, &q(-1), &rhs);
                if !diff.is_empty() {
                    rep.fail("leibniz", vec![x, y], self.algebra.fmt(&diff));
                }
            }
        }
        rep
    }
}

/// Dg Lie algebras `g`, `h` and a dg Lie homomorphism `i: g -> h`, so that
/// `g` acts on `h` through `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DgLiePair {
    pub g: DgLieAlgebra,
    pub h: DgLieAlgebra,
    pub i: QMatrix,
}

impl DgLiePair {
    pub fn new(g: DgLieAlgebra, h: DgLieAlgebra, i: QMatrix) -> Result<Self> {
        if i.nrows() != h.dim() || i.ncols() != g.dim() {
            return Err(Error::Dimension(format!("i must be {}x{}", h.dim(), g.dim())));
        }
        Ok(DgLiePair { g, h, i })
    }

    /// `g = h`, `i = id`.
    pub fn identity(h: DgLieAlgebra) -> Self {
        let n = h.dim();
        DgLiePair {
            g: h.clone(),
            h,
            i: QMatrix::identity(n),
        }
    }

    pub fn check(&self) -> StructureReport {
        let mut rep = StructureReport::default();
        rep.absorb("g", self.g.check());
        rep.absorb("h", self.h.check());
        for (r, c, v) in self.i.entries() {
            if self.h.algebra.degree(r) != self.g.algebra.degree(c) {
                rep.fail("i_degree", vec![c, r], v.to_string());
            }
        }
        if self.i.mul(&self.g.d) != self.h.d.mul(&self.i) {
            rep.fail("i_chain_map", vec![], "i ∂ != ∂ i".into());
        }
        if let Some((a, b, v)) = self.g.algebra.hom_defect(&self.h.algebra, &self.i) {
            rep.fail("i_homomorphism", vec![a, b], fmt_sparse(&v, |k| self.h.algebra.label(k).to_string()));
        }
        rep
    }
}

/// Polynomial differential forms `Q[t_1..t_k, dt_1..dt_k]` modulo forms of
/// weight `|α| + |S| > w`, where `t^α dt_S` has weight `|α| + |S|`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForms {
    vars: Vec<String>,
    basis: Vec<(Vec<u32>, Vec<usize>)>,
    index: BTreeMap<(Vec<u32>, Vec<usize>), usize>,
}

impl PolyForms {
    pub fn new(vars: &[&str], max_weight: u32) -> Self {
        let k = vars.len();
        let mut basis = Vec::new();
        let mut exps: Vec<Vec<u32>> = vec![vec![0; k]];
        let mut frontier = exps.clone();
        for _ in 0..max_weight {
            let mut next = Vec::new();
            for e in &frontier {
                for v in 0..k {
                    let mut x = e.clone();
                    x[v] += 1;
                    if !exps.contains(&x) && !next.contains(&x) {
                        next.push(x);
                    }
                }
            }
            exps.extend(next.iter().cloned());
            frontier = next;
        }
        for mask in 0..(1usize << k) {
            let s: Vec<usize> = (0..k).filter(|v| mask >> v & 1 == 1).collect();
            for e in &exps {
                if e.iter().sum::<u32>() + s.len() as u32 <= max_weight {
                    basis.push((e.clone(), s.clone()));
                }
            }
        }
        basis.sort_by_key(|(e, s)| {
            let w = e.iter().sum::<u32>() as usize + s.len();
            (w, s.len(), std::cmp::Reverse(e.clone()), s.clone())
        });
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        PolyForms {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].1.len() as i32
    }

    pub fn label(&self, i: usize) -> String {
        let (e, s) = &self.basis[i];
        let mut parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, x)| **x > 0)
            .map(|(v, x)| if *x == 1 { self.vars[v].clone() } else { format!("{}^{}", self.vars[v], x) })
            .collect();
        parts.extend(s.iter().map(|v| format!("d{}", self.vars[*v])));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    fn lookup(&self, e: Vec<u32>, s: Vec<usize>) -> Option<usize> {
        self.index.get(&(e, s)).copied()
    }

    /// Product of basis forms, with the sign from sorting the `dt`s.
    pub fn mul(&self, a: usize, b: usize) -> Option<(usize, Rational)> {
        let (ea, sa) = &self.basis[a];
        let (eb, sb) = &self.basis[b];
        let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
        let mut s: Vec<usize> = sa.iter().chain(sb).copied().collect();
        let sign = crate::jb::wedge_sort(&mut s)?;
        self.lookup(e, s).map(|k| (k, q(sign)))
    }

    /// `d(t^α dt_S) = sum_v α_v t^(α - e_v) dt_v ∧ dt_S`.
    pub fn d(&self, a: usize) -> SparseVec {
        let (e, s) = &self.basis[a];
        let mut out = SparseVec::new();
        for v in 0..e.len() {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            let mut s2 = vec![v];
            s2.extend(s);
            if let Some(sign) = crate::jb::wedge_sort(&mut s2) {
                if let Some(k) = self.lookup(e2, s2) {
                    crate::linalg::add_entry(&mut out, k, &q(sign * e[v] as i64));
                }
            }
        }
        out
    }
}

/// The dg Lie algebra `n ⊗ Ω` for an ungraded Lie algebra `n`; basis
/// `(x, a)` at index `x * dim Ω + a`.
pub fn with_forms(n: &LieAlgebra, forms: &PolyForms) -> Result<DgLieAlgebra> {
    if n.is_graded() {
        return Err(Error::Precondition("forms are tensored with ungraded algebras".into()));
    }
    let k = forms.dim();
    let dim = n.dim() * k;
    let mut labels = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for x in 0..n.dim() {
        for a in 0..k {
            labels.push(format!("{}⊗{}", n.label(x), forms.label(a)));
            degrees.push(forms.degree(a));
        }
    }
    let mut alg = LieAlgebra::graded(labels, degrees);
    for (x, y, v) in n.brackets() {
        for a in 0..k {
            for b in 0..k {
                let Some((c, s)) = forms.mul(a, b) else { continue };
                let (p, r) = (x * k + a, y * k + b);
                if p < r {
                    let w: SparseVec = v.iter().map(|(z, cz)| (z * k + c, cz * &s)).collect();
                    alg.set_bracket(p, r, w)?;
                }
            }
        }
    }
    let mut d = QMatrix::zeros(dim, dim);
    for x in 0..n.dim() {
        for a in 0..k {
            for (b, c) in forms.d(a) {
                d.set(x * k + b, x * k + a, c);
            }
        }
    }
    DgLieAlgebra::new(alg, d)
}

/// `f ⊗ id` for a linear map `f` between ungraded algebras.
pub fn map_with_forms(f: &QMatrix, forms: &PolyForms) -> QMatrix {
    let k = forms.dim();
    let mut out = QMatrix::zeros(f.nrows() * k, f.ncols() * k);
    for (r, c, v) in f.entries() {
        for a in 0..k {
            out.set(r * k + a, c * k + a, v.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::examples::{gl, heisenberg};

    #[test]
    fn forms_are_a_dg_algebra() {
        let f = PolyForms::new(&["s", "t"], 2);
        assert_eq!(f.dim(), 13);
        for a in 0..f.dim() {
            let dd: SparseVec = {
                let mut out = SparseVec::new();
                for (b, c) in f.d(a) {
                    axpy(&mut out, &c, &f.d(b));
                }
                out
            };
            assert!(dd.is_empty());
        }
    }

    #[test]
    fn tensored_algebras_are_dg_lie() {
        let f = PolyForms::new(&["s", "t"], 2);
        for n in [heisenberg(), gl(2)] {
            let g = with_forms(&n, &f).unwrap();
            let rep = g.check();
            assert!(rep.ok(), "{:?}", rep.failures.first());
        }
    }

    #[test]
    fn odd_self_bracket_and_bad_differential() {
        let mut alg = LieAlgebra::graded(vec!["v".into(), "w".into()], vec![1, 2]);
        alg.set_bracket(0, 0, [(1, q(1))].into_iter().collect()).unwrap();
        assert!(DgLieAlgebra::formal(alg.clone()).check().ok());
        let mut d = QMatrix::zeros(2, 2);
        d.set(0, 1, q(1));
        let rep = DgLieAlgebra::new(alg, d).unwrap().check();
        assert!(rep.failures.iter().any(|f| f.check == "differential_degree"));
    }
}
