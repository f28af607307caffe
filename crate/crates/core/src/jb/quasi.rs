//! Invariance of `H^0(J♯_m)` under quasi-isomorphisms of Lie pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{wedge_sort, JbBasis, JbComplex};
use crate::error::{Error, Result};
use crate::lie::{unit, LieAtom};
use crate::linalg::{q, QMatrix, Rational, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub m: usize,
    /// Isomorphisms on `ker i` and `coker i`.
    pub two_term_iso: bool,
    /// The induced maps commute with the differentials in every degree.
    pub chain_map: bool,
    pub h0_dims: (usize, usize),
    pub induced_iso: bool,
}

impl QuasiIsoReport {
    pub fn ok(&self) -> bool {
        self.two_term_iso && self.chain_map && self.h0_dims.0 == self.h0_dims.1 && self.induced_iso
    }
}

fn morphism_defect(a: &LieAtom, b: &LieAtom, fg: &QMatrix, fh: &QMatrix) -> Option<String> {
    if fg.nrows() != b.g.dim() || fg.ncols() != a.g.dim() || fh.nrows() != b.h.dim() || fh.ncols() != a.h.dim() {
        return Some("map dimensions do not match the atoms".into());
    }
    if let Some((i, j, _)) = a.g.hom_defect(&b.g, fg) {
        return Some(format!("g-map is not a Lie homomorphism at ({i}, {j})"));
    }
    if fh.mul(&a.i) != b.i.mul(fg) {
        return Some("h-map does not intertwine i".into());
    }
    for x in 0..a.g.dim() {
        for v in 0..a.h.dim() {
            let lhs = fh.apply(&a.h.act_basis(x, v));
            let rhs = b.h.act(&fg.column(x), &fh.column(v));
            if lhs != rhs {
                return Some(format!("h-map is not equivariant at ({x}, {v})"));
            }
        }
    }
    let (ha, hb) = (&a.hull().ok()?.algebra, &b.hull().ok()?.algebra);
    if let Some((i, j, _)) = ha.hom_defect(hb, fh) {
        return Some(format!("h-map is not a Lie homomorphism at ({i}, {j})"));
    }
    None
}

/// Sorted-product expansion of `f(x_1)···f(x_n)` in a symmetric or
/// exterior algebra.
fn expand(factors: &[SparseVec], wedge: bool) -> BTreeMap<Vec<usize>, Rational> {
    let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    acc.insert(vec![], q(1));
    for f in factors {
        let mut next: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (key, c) in &acc {
            for (k, v) in f {
                let mut k2 = key.clone();
                k2.push(*k);
                let s = if wedge {
                    match wedge_sort(&mut k2) {
                        Some(s) => q(s),
                        None => continue,
                    }
                } else {
                    k2.sort_unstable();
                    q(1)
                };
                *next.entry(k2).or_insert_with(|| q(0)) += c * v * s;
            }
        }
        next.retain(|_, v| *v != q(0));
        acc = next;
    }
    acc
}

/// `Λ^n fg ⊗ Sym fh` from degree `-n` of `a` to degree `-n` of `b`.
fn degree_map(a: &JbComplex, b: &JbComplex, fg: &QMatrix, fh: &QMatrix, n: usize) -> Result<QMatrix> {
    let src = a.term(n);
    let mut out = QMatrix::zeros(b.term(n).len(), src.len());
    for (col, x) in src.iter().enumerate() {
        let wf: Vec<SparseVec> = x.wedge.iter().map(|k| fg.column(*k)).collect();
        let mf: Vec<SparseVec> = x.mono.iter().map(|k| fh.column(*k)).collect();
        let (we, me) = (expand(&wf, true), expand(&mf, false));
        for (w, cw) in &we {
            for (mm, cm) in &me {
                let key = JbBasis {
                    wedge: w.clone(),
                    mono: mm.clone(),
                };
                let row = b.index_of(&key).ok_or_else(|| {
                    Error::Precondition(format!("{} has no counterpart", b.fmt_basis(&key)))
                })?;
                out.add_to(row, col, &(cw * cm));
            }
        }
    }
    Ok(out)
}

/// Matrix of the map `H^0(J♯_m(a)) -> H^0(J♯_m(b))` induced by `(fg, fh)`.
pub fn induced_h0_map(a: &JbComplex, b: &JbComplex, fg: &QMatrix, fh: &QMatrix) -> Result<QMatrix> {
    let f0 = degree_map(a, b, fg, fh, 0)?;
    let (ha, hb) = (a.h0(), b.h0());
    let mut out = QMatrix::zeros(hb.dim, ha.dim);
    for (u, rep) in ha.reps.iter().enumerate() {
        for (v, c) in hb.proj.apply(&f0.apply(&unit(*rep))) {
            out.set(v, u, c);
        }
    }
    Ok(out)
}

/// Checks that a morphism of Lie pairs inducing isomorphisms on the
/// cohomology of `g -> h` induces an isomorphism on `H^0(J♯_m)`.
pub fn quasi_iso_check(a: &LieAtom, b: &LieAtom, fg: &QMatrix, fh: &QMatrix, m: usize) -> Result<QuasiIsoReport> {
    if !a.is_pair() || !b.is_pair() {
        return Err(Error::Precondition("quasi-isomorphism checks take Lie pairs".into()));
    }
    if let Some(why) = morphism_defect(a, b, fg, fh) {
        return Err(Error::NotAtomicMorphism(why));
    }
    let ker_a = a.i.kernel_basis();
    let ker_b = b.i.kernel_basis();
    let ker_iso = ker_a.ncols() == ker_b.ncols() && fg.mul(&ker_a).rank() == ker_a.ncols();
    let (ca, cb) = (a.i.cokernel_data(), b.i.cokernel_data());
    let mut coker_map = QMatrix::zeros(cb.dim, ca.dim);
    for (u, rep) in ca.reps.iter().enumerate() {
        for (v, c) in cb.proj.apply(&fh.column(*rep)) {
            coker_map.set(v, u, c);
        }
    }
    let coker_iso = ca.dim == cb.dim && coker_map.rank() == ca.dim;
    let (xa, xb) = (JbComplex::build(a, m)?, JbComplex::build(b, m)?);
    let mut chain_map = true;
    for n in 1..=m {
        let lhs = xb.differential(n).mul(&degree_map(&xa, &xb, fg, fh, n)?);
        let rhs = degree_map(&xa, &xb, fg, fh, n - 1)?.mul(xa.differential(n));
        if lhs != rhs {
            chain_map = false;
        }
    }
    let induced = induced_h0_map(&xa, &xb, fg, fh)?;
    let dims = (xa.h0().dim, xb.h0().dim);
    Ok(QuasiIsoReport {
        m,
        two_term_iso: ker_iso && coker_iso,
        chain_map,
        h0_dims: dims,
        induced_iso: dims.0 == dims.1 && induced.rank() == dims.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::examples::{heisenberg_pair, identity_line_atom, trivial_atom};

    #[test]
    fn identity_morphism() {
        let a = heisenberg_pair();
        let rep = quasi_iso_check(&a, &a, &QMatrix::identity(3), &QMatrix::identity(3), 3).unwrap();
        assert!(rep.ok());
    }

    #[test]
    fn quasi_trivial_to_trivial() {
        let rep = quasi_iso_check(&identity_line_atom(), &trivial_atom(), &QMatrix::zeros(0, 1), &QMatrix::zeros(0, 1), 3).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.h0_dims, (0, 0));
    }

    #[test]
    fn non_morphism_rejected() {
        let a = heisenberg_pair();
        let mut f = QMatrix::identity(3);
        f.set(2, 2, q(2));
        assert!(matches!(quasi_iso_check(&a, &a, &f, &f, 2), Err(Error::NotAtomicMorphism(_))));
    }
}
