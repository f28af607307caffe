//! Base change `g ⊗ m` along the maximal ideal of an artinian algebra.

use super::algebra::LieAlgebra;
use super::atom::{Hull, LieAtom};
use super::filtration::adjoint_filtration;
use crate::artin::ArtinAlgebra;
use crate::error::Result;
use crate::linalg::{Echelon, QMatrix, SparseVec};

/// `g ⊗ m` with `[x⊗s, y⊗t] = [x,y]⊗st`; basis `(k, μ)` at index
/// `k * dim m + μ`.
pub fn tensor_algebra(g: &LieAlgebra, a: &ArtinAlgebra) -> LieAlgebra {
    let n = a.dim();
    let mut labels = Vec::with_capacity(g.dim() * n);
    let mut degrees = Vec::with_capacity(g.dim() * n);
    for k in 0..g.dim() {
        for mu in 0..n {
            labels.push(format!("{}⊗{}", g.label(k), a.label(mu)));
            degrees.push(g.degree(k));
        }
    }
    let mut out = LieAlgebra::graded(labels, degrees);
    for (i, j, v) in g.brackets() {
        for mu in 0..n {
            for nu in 0..n {
                let Some(p) = a.mul(mu, nu) else { continue };
                let w: SparseVec = v.iter().map(|(k, c)| (k * n + p, c.clone())).collect();
                let (x, y) = (i * n + mu, j * n + nu);
                if x <= y {
                    out.set_bracket(x, y, w).expect("tensor bracket");
                }
            }
        }
    }
    out
}

/// `M ⊗ id_m`.
pub fn tensor_map(m: &QMatrix, a: &ArtinAlgebra) -> QMatrix {
    let n = a.dim();
    let mut out = QMatrix::zeros(m.nrows() * n, m.ncols() * n);
    for (r, c, v) in m.entries() {
        for mu in 0..n {
            out.set(r * n + mu, c * n + mu, v.clone());
        }
    }
    out
}

/// An atom with hull, tensored with `m`.
#[derive(Clone, Debug)]
pub struct TensoredAtom {
    pub g_m: LieAlgebra,
    pub hull_m: LieAlgebra,
    pub embed_g: QMatrix,
    pub embed_h: QMatrix,
    /// `h ⊗ m` inside `h+ ⊗ m`.
    pub h_m: Echelon,
    /// The Lie subalgebra of `h+ ⊗ m` generated by `h ⊗ m`.
    pub h_plus_m: Echelon,
    /// `h^[∞] ⊗ m`.
    pub h_inf_m: Echelon,
}

/// Lie closure of a span under the bracket of `alg`.
pub fn lie_closure(alg: &LieAlgebra, start: &Echelon) -> Echelon {
    let mut span = start.clone();
    let mut basis = span.basis();
    let mut frontier = 0;
    while frontier < basis.len() {
        let v = basis[frontier].clone();
        let mut added = Vec::new();
        for u in &basis[..=frontier] {
            let w = alg.bracket(u, &v);
            if span.insert(&w).is_some() {
                added.push(w);
            }
        }
        basis.extend(added);
        frontier += 1;
    }
    span
}

pub fn tensor_atom(atom: &LieAtom, a: &ArtinAlgebra) -> Result<TensoredAtom> {
    let hull = atom.hull()?;
    let mut t = tensor_hull(hull, a);
    t.g_m = tensor_algebra(&atom.g, a);
    Ok(t)
}

/// As [`tensor_atom`] for bare hull data; `g_m` is left abelian since only
/// the hull bracket is known.
pub fn tensor_hull(hull: &Hull, a: &ArtinAlgebra) -> TensoredAtom {
    let g_m = LieAlgebra::abelian(hull.g_dim() * a.dim());
    let hull_m = tensor_algebra(&hull.algebra, a);
    let embed_g = tensor_map(&hull.embed_g, a);
    let embed_h = tensor_map(&hull.embed_h, a);
    let h_m = Echelon::from_vectors(hull_m.dim(), &embed_h.columns());
    let h_plus_m = lie_closure(&hull_m, &h_m);
    let lim = adjoint_filtration(hull, a.exponent()).limit;
    let lim_cols = QMatrix::from_columns(hull.algebra.dim(), &lim.basis());
    let h_inf_m = Echelon::from_vectors(hull_m.dim(), &tensor_map(&lim_cols, a).columns());
    TensoredAtom {
        g_m,
        hull_m,
        embed_g,
        embed_h,
        h_m,
        h_plus_m,
        h_inf_m,
    }
}
