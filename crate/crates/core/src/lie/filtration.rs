//! The adjoint filtration `h^[m] = h + sum_{i <= m} g_@h^i` inside a hull.

use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::{unit, LieAlgebra};
use super::atom::Hull;
use crate::linalg::{axpy, Echelon, QMatrix, Rational, SparseVec};

/// Subspaces `h^[0] ⊆ ... ⊆ h^[m_max]` of `h+` and the limit `h^[∞]`.
#[derive(Clone, Debug)]
pub struct AdjointFiltration {
    pub levels: Vec<Echelon>,
    pub limit: Echelon,
    /// True when the generating brackets died out before the level cap, so
    /// `limit` is exactly `h^[∞]`.
    pub exhausted: bool,
}

/// Results of the monotonicity, module and pairing checks.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct FiltrationReport {
    pub dims: Vec<usize>,
    pub limit_dim: usize,
    pub increasing: bool,
    /// Levels `m` with `[g, h^[m]]` not inside `h^[m]`.
    pub module_failures: Vec<usize>,
    /// Pairs `(m1, m2)` with `[h^[m1], h^[m2]]` not inside `h^[m1+m2]`.
    pub pairing_failures: Vec<(usize, usize)>,
}

impl FiltrationReport {
    pub fn ok(&self) -> bool {
        self.increasing && self.module_failures.is_empty() && self.pairing_failures.is_empty()
    }
}

/// `Sym(x; M)`: the symmetrized iterated bracket `x_@b_{k1}_@...` over all
/// orderings of the multiset `M`, each distinct ordering counted once.
fn symmetrized(alg: &LieAlgebra, x: &SparseVec, letters: &[SparseVec], m: &mut BTreeMap<usize, usize>) -> SparseVec {
    if m.is_empty() || x.is_empty() {
        return x.clone();
    }
    let mut out = SparseVec::new();
    let keys: Vec<usize> = m.keys().copied().collect();
    for k in keys {
        let next = alg.bracket(x, &letters[k]);
        let c = m[&k];
        if c == 1 {
            m.remove(&k);
        } else {
            m.insert(k, c - 1);
        }
        let inner = symmetrized(alg, &next, letters, m);
        m.insert(k, c);
        axpy(&mut out, &Rational::from_integer(1.into()), &inner);
    }
    out
}

fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Generators of `g_@h^i`.
fn level_generators(hull: &Hull, i: usize) -> Vec<SparseVec> {
    let g_img = hull.embed_g.columns();
    let h_img = hull.embed_h.columns();
    let mut out = Vec::new();
    for ms in multisets(h_img.len(), i) {
        let mut m = BTreeMap::new();
        for k in ms {
            *m.entry(k).or_insert(0) += 1;
        }
        for a in &g_img {
            let v = symmetrized(&hull.algebra, a, &h_img, &mut m);
            if !v.is_empty() {
                out.push(v);
            }
        }
    }
    out
}

/// Computes `h^[0..=m_max]` and the limit `h^[∞]`.
///
/// The limit is found by adding levels until one contributes no nonzero
/// bracket; if that has not happened by level `m_max + dim h+ + 1`,
/// `exhausted` is false.
pub fn adjoint_filtration(hull: &Hull, m_max: usize) -> AdjointFiltration {
    let n = hull.algebra.dim();
    let mut span = Echelon::new(n);
    for c in hull.embed_h.columns() {
        span.insert(&c);
    }
    let mut levels = Vec::with_capacity(m_max + 1);
    let full = span.rank() == n;
    let cap = m_max + n + 1;
    let mut exhausted = full;
    for i in 0..=cap {
        if i > m_max && exhausted {
            break;
        }
        if !full {
            let gens = level_generators(hull, i);
            if gens.is_empty() && i > 0 {
                exhausted = true;
            }
            for v in &gens {
                span.insert(v);
            }
        }
        if i <= m_max {
            levels.push(span.clone());
        }
    }
    AdjointFiltration {
        levels,
        limit: span,
        exhausted,
    }
}

impl AdjointFiltration {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Echelon::rank).collect()
    }

    /// Smallest level containing `v`, `None` if `v` is outside the last level.
    pub fn level_of(&self, v: &SparseVec) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(v))
    }

    /// A basis of `h+` whose first vectors span `h`, followed by vectors
    /// completing each level in turn, then a complement of the last level.
    /// Returns the change-of-basis matrix (new basis as columns) and the
    /// level of each basis vector (`levels.len()` for the complement).
    pub fn adapted_basis(&self, hull: &Hull) -> (QMatrix, Vec<usize>) {
        let n = hull.algebra.dim();
        let mut acc = Echelon::new(n);
        let mut cols = Vec::new();
        let mut lev = Vec::new();
        for c in hull.embed_h.columns() {
            if acc.insert(&c).is_some() {
                cols.push(c);
                lev.push(0);
            }
        }
        for (i, l) in self.levels.iter().enumerate() {
            for v in l.basis() {
                if acc.insert(&v).is_some() {
                    cols.push(v);
                    lev.push(i);
                }
            }
        }
        for k in 0..n {
            let e = unit(k);
            if acc.insert(&e).is_some() {
                cols.push(e);
                lev.push(self.levels.len());
            }
        }
        (QMatrix::from_columns(n, &cols), lev)
    }

    /// Checks monotonicity, `[g, h^[m]] ⊆ h^[m]` and
    /// `[h^[m1], h^[m2]] ⊆ h^[m1+m2]` for `m1 + m2 <= m_max`.
    pub fn report(&self, hull: &Hull) -> FiltrationReport {
        let alg = &hull.algebra;
        let increasing = self.levels.windows(2).all(|w| w[1].contains_all(&w[0]));
        let g_img = hull.embed_g.columns();
        let bases: Vec<Vec<SparseVec>> = self.levels.iter().map(Echelon::basis).collect();
        let mut module_failures = Vec::new();
        for (m, l) in self.levels.iter().enumerate() {
            let bad = g_img
                .iter()
                .any(|a| bases[m].iter().any(|v| !l.contains(&alg.bracket(a, v))));
            if bad {
                module_failures.push(m);
            }
        }
        let top = self.levels.len().saturating_sub(1);
        let mut pairing_failures = Vec::new();
        for m1 in 0..=top {
            for m2 in m1..=top {
                if m1 + m2 > top {
                    break;
                }
                let target = &self.levels[m1 + m2];
                let bad = bases[m1]
                    .iter()
                    .any(|u| bases[m2].iter().any(|v| !target.contains(&alg.bracket(u, v))));
                if bad {
                    pairing_failures.push((m1, m2));
                }
            }
        }
        FiltrationReport {
            dims: self.dims(),
            limit_dim: self.limit.rank(),
            increasing,
            module_failures,
            pairing_failures,
        }
    }
}
