//! The truncated Jacobi-Bernoulli complex of a Lie atom.
//!
//! Degree `-n` is spanned by `w ⊗ M` with `w` a sorted wedge of `n` basis
//! vectors of `g` and `M` a multiset of letters (basis vectors of the hull,
//! adapted to the adjoint filtration). The order-`m` truncation keeps
//! `n + |M| <= m`, `|M| >= 1` in degree 0, and letter levels summing to at
//! most `m`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::bernoulli::bernoulli_coeffs;
use crate::error::{Error, Result};
use crate::lie::{adjoint_filtration, unit, LieAlgebra, LieAtom};
use crate::linalg::{factorial, fmt_rational, q, Cokernel, QMatrix, Rational, SparseVec};

/// Weight attached to one ordered choice of `t` letters in `L_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SymNormalization {
    /// Weight 1: `Sym` as symmetric tensors, product = concatenation.
    #[default]
    OrderedTuples,
    /// Weight `(j-t)!/j!`: the averaged polarization of the power formula.
    Averaged,
}

/// Placement and sign of the bracket terms of the wedge differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BracketSign {
    /// `[a_p, a_q]` moved to the front with sign `(-1)^(p+q)`.
    #[default]
    Front,
    /// `[a_p, a_q]` left in slot `p` with sign `(-1)^(q-p-1)`.
    InPlace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct JbConventions {
    pub normalization: SymNormalization,
    pub bracket_sign: BracketSign,
}

/// A basis vector `w ⊗ M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JbBasis {
    pub wedge: Vec<usize>,
    pub mono: Vec<usize>,
}

type Terms = BTreeMap<JbBasis, Rational>;

fn add_term(out: &mut Terms, key: JbBasis, x: Rational) {
    if x == q(0) {
        return;
    }
    let e = out.entry(key.clone()).or_insert_with(|| q(0));
    *e += x;
    if *e == q(0) {
        out.remove(&key);
    }
}

/// Sorts a wedge, returning the permutation sign, or `None` on a repeat.
pub fn wedge_sort(v: &mut [usize]) -> Option<i64> {
    let mut s = 1;
    for i in 0..v.len() {
        for k in 0..v.len() - 1 - i {
            if v[k] > v[k + 1] {
                v.swap(k, k + 1);
                s = -s;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(s)
    }
}

fn multisets(n: usize, size: usize, out: &mut Vec<Vec<usize>>) {
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
    rec(0, n, size, &mut Vec::new(), out);
}

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// `J♯_m` with its differentials.
#[derive(Clone, Debug)]
pub struct JbComplex {
    m: usize,
    conventions: JbConventions,
    g: LieAlgebra,
    /// The hull in the adapted basis; its basis vectors are the letters.
    letters: LieAlgebra,
    /// Letter coordinates of `i(e_a)`.
    i_mat: QMatrix,
    /// Letters as columns in the hull's own basis.
    letter_basis: QMatrix,
    levels: Vec<usize>,
    /// Letters spanning `h`.
    h_letters: usize,
    terms: Vec<Vec<JbBasis>>,
    index: Vec<HashMap<JbBasis, usize>>,
    /// `diffs[n - 1]`: degree `-n` to degree `-n + 1`.
    diffs: Vec<QMatrix>,
    coeffs: Vec<Rational>,
}

/// Nonzero entry of a composite `d∘d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct D2Failure {
    pub degree: i64,
    pub source: String,
    pub target: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct D2Report {
    pub ok: bool,
    pub checked: usize,
    pub failures: Vec<D2Failure>,
}

/// `H^0 = K^0 / im d`, with representatives among the basis vectors of `K^0`.
#[derive(Clone, Debug)]
pub struct H0 {
    pub dim: usize,
    pub reps: Vec<usize>,
    /// `dim x dim K^0`.
    pub proj: QMatrix,
}

impl JbComplex {
    pub fn build(atom: &LieAtom, m: usize) -> Result<Self> {
        JbComplex::build_with(atom, m, JbConventions::default())
    }

    pub fn build_with(atom: &LieAtom, m: usize, conventions: JbConventions) -> Result<Self> {
        if m < 1 {
            return Err(Error::OrderTooSmall(m));
        }
        let rep = atom.check();
        if let Some(f) = rep.failures.first() {
            return Err(Error::InvalidStructure(f.to_string()));
        }
        if atom.g.is_graded() {
            return Err(Error::Precondition("the complex is built for ungraded atoms".into()));
        }
        let hull = atom.hull()?;
        let (letters, i_mat, levels, letter_basis) = if atom.is_pair() {
            let n = atom.h.dim();
            (hull.algebra.clone(), atom.i.clone(), vec![0; n], QMatrix::identity(n))
        } else {
            let filt = adjoint_filtration(hull, m);
            let (p, levels) = filt.adapted_basis(hull);
            let labels = (0..p.ncols()).map(|k| format!("u{k}")).collect();
            let letters = hull.algebra.change_basis(&p, labels)?;
            let cols = hull
                .embed_g
                .columns()
                .iter()
                .map(|c| p.solve_sparse(c).expect("adapted basis is a basis"))
                .collect::<Vec<_>>();
            (letters, QMatrix::from_columns(p.ncols(), &cols), levels, p)
        };
        let n_letters = letters.dim();
        let mut monos: Vec<Vec<usize>> = Vec::new();
        for j in 0..=m {
            let mut all = Vec::new();
            multisets(n_letters, j, &mut all);
            monos.extend(
                all.into_iter()
                    .filter(|ms| ms.iter().map(|k| levels[*k]).sum::<usize>() <= m),
            );
        }
        let mut terms = Vec::with_capacity(m + 1);
        for n in 0..=m {
            let mut t = Vec::new();
            for w in combinations(atom.g.dim(), n) {
                for ms in &monos {
                    if n + ms.len() <= m && (n > 0 || !ms.is_empty()) {
                        t.push(JbBasis {
                            wedge: w.clone(),
                            mono: ms.clone(),
                        });
                    }
                }
            }
            t.sort_by(|a, b| {
                (a.mono.len(), &a.wedge, &a.mono).cmp(&(b.mono.len(), &b.wedge, &b.mono))
            });
            terms.push(t);
        }
        let index = terms
            .iter()
            .map(|t| t.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect())
            .collect();
        let mut cx = JbComplex {
            m,
            conventions,
            g: atom.g.clone(),
            letters,
            i_mat,
            letter_basis,
            levels,
            h_letters: atom.h.dim(),
            terms,
            index,
            diffs: Vec::new(),
            coeffs: bernoulli_coeffs(m + 1),
        };
        for n in 1..=m {
            let d = cx.differential_matrix(n)?;
            cx.diffs.push(d);
        }
        Ok(cx)
    }

    fn differential_matrix(&self, n: usize) -> Result<QMatrix> {
        let (src, dst) = (&self.terms[n], &self.index[n - 1]);
        let mut d = QMatrix::zeros(self.terms[n - 1].len(), src.len());
        for (col, b) in src.iter().enumerate() {
            for (key, x) in self.d_basis(b) {
                match dst.get(&key) {
                    Some(&row) => d.set(row, col, x),
                    None => {
                        return Err(Error::NotSubcomplex(format!(
                            "d({}) has a component on {} outside the truncation",
                            self.fmt_basis(b),
                            self.fmt_basis(&key)
                        )))
                    }
                }
            }
        }
        Ok(d)
    }

    /// `L_a(M) = sum_t c_t sum (i(a)_@b_p1.._@b_pt) · rest` over ordered
    /// choices of `t` distinct positions of `M`.
    pub fn l_action(&self, a: usize, mono: &[usize]) -> BTreeMap<Vec<usize>, Rational> {
        let mut out: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        let j = mono.len();
        let ia = self.i_mat.column(a);
        self.l_rec(&ia, mono, &mut vec![false; j], 0, &mut out);
        out.retain(|_, v| *v != q(0));
        out
    }

    fn l_rec(&self, y: &SparseVec, mono: &[usize], used: &mut Vec<bool>, t: usize, out: &mut BTreeMap<Vec<usize>, Rational>) {
        if y.is_empty() {
            return;
        }
        let j = mono.len();
        let c = &self.coeffs[t];
        if *c != q(0) {
            let w = match self.conventions.normalization {
                SymNormalization::OrderedTuples => q(1),
                SymNormalization::Averaged => Rational::new(factorial(j - t), factorial(j)),
            };
            let rest: Vec<usize> = (0..j).filter(|p| !used[*p]).map(|p| mono[p]).collect();
            for (k, yk) in y {
                let mut key = rest.clone();
                key.push(*k);
                key.sort_unstable();
                *out.entry(key).or_insert_with(|| q(0)) += c * &w * yk;
            }
        }
        for p in 0..j {
            if used[p] {
                continue;
            }
            let next = self.letters.bracket(y, &unit(mono[p]));
            used[p] = true;
            self.l_rec(&next, mono, used, t + 1, out);
            used[p] = false;
        }
    }

    /// `d(w ⊗ M)`: Bernoulli terms removing one slot, bracket terms merging two.
    pub fn d_basis(&self, b: &JbBasis) -> Terms {
        let mut out = Terms::new();
        let w = &b.wedge;
        let n = w.len();
        for p in 0..n {
            let mut rest = w.clone();
            rest.remove(p);
            let s = if p % 2 == 0 { q(1) } else { q(-1) };
            for (m2, v) in self.l_action(w[p], &b.mono) {
                add_term(
                    &mut out,
                    JbBasis {
                        wedge: rest.clone(),
                        mono: m2,
                    },
                    &s * v,
                );
            }
        }
        for p in 0..n {
            for r in p + 1..n {
                for (k, v) in self.g.bracket_basis(w[p], w[r]) {
                    let (mut lst, s) = match self.conventions.bracket_sign {
                        BracketSign::Front => {
                            let mut l = vec![k];
                            l.extend((0..n).filter(|x| *x != p && *x != r).map(|x| w[x]));
                            (l, (p + r) % 2)
                        }
                        BracketSign::InPlace => {
                            let mut l = w.clone();
                            l[p] = k;
                            l.remove(r);
                            (l, (r - p - 1) % 2)
                        }
                    };
                    if let Some(sg) = wedge_sort(&mut lst) {
                        let sign = if (s == 0) == (sg == 1) { q(1) } else { q(-1) };
                        add_term(
                            &mut out,
                            JbBasis {
                                wedge: lst,
                                mono: b.mono.clone(),
                            },
                            sign * v,
                        );
                    }
                }
            }
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn conventions(&self) -> JbConventions {
        self.conventions
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn letters(&self) -> &LieAlgebra {
        &self.letters
    }

    pub fn i_matrix(&self) -> &QMatrix {
        &self.i_mat
    }

    pub fn letter_basis(&self) -> &QMatrix {
        &self.letter_basis
    }

    pub fn letter_levels(&self) -> &[usize] {
        &self.levels
    }

    /// Number of letters coming from `h` (the first ones).
    pub fn h_letters(&self) -> usize {
        self.h_letters
    }

    /// `dim K^0, dim K^-1, ..., dim K^-m`.
    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// Basis of degree `-n`.
    pub fn term(&self, n: usize) -> &[JbBasis] {
        &self.terms[n]
    }

    pub fn index_of(&self, b: &JbBasis) -> Option<usize> {
        self.index.get(b.wedge.len())?.get(b).copied()
    }

    /// Differential from degree `-n` to degree `-n + 1`, `1 <= n <= m`.
    pub fn differential(&self, n: usize) -> &QMatrix {
        &self.diffs[n - 1]
    }

    pub fn fmt_mono(&self, mono: &[usize]) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < mono.len() {
            let k = mono[i];
            let e = mono[i..].iter().take_while(|x| **x == k).count();
            let l = self.letters.label(k);
            parts.push(if e == 1 { l.to_string() } else { format!("{l}^{e}") });
            i += e;
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        }
    }

    pub fn fmt_basis(&self, b: &JbBasis) -> String {
        let w: Vec<&str> = b.wedge.iter().map(|k| self.g.label(*k)).collect();
        let w = if w.is_empty() { "1".to_string() } else { w.join("∧") };
        format!("{w}⊗{}", self.fmt_mono(&b.mono))
    }

    /// Every composite `d^(-n+1) ∘ d^(-n)` is the zero matrix.
    pub fn check_d2(&self) -> D2Report {
        let mut rep = D2Report {
            ok: true,
            ..D2Report::default()
        };
        for n in 2..=self.m {
            let comp = self.differential(n - 1).mul(self.differential(n));
            rep.checked += 1;
            for (r, c, v) in comp.entries() {
                rep.ok = false;
                if rep.failures.len() < 10 {
                    rep.failures.push(D2Failure {
                        degree: -(n as i64),
                        source: self.fmt_basis(&self.terms[n][c]),
                        target: self.fmt_basis(&self.terms[n - 2][r]),
                        value: fmt_rational(&v),
                    });
                }
            }
        }
        rep
    }

    /// F-level `n + |M|` of a basis vector.
    pub fn f_level(b: &JbBasis) -> usize {
        b.wedge.len() + b.mono.len()
    }

    /// `d(F_r) ⊆ F_r` for every `r`.
    pub fn preserves_f(&self) -> bool {
        (1..=self.m).all(|n| {
            self.differential(n).entries().iter().all(|(r, c, _)| {
                Self::f_level(&self.terms[n - 1][*r]) <= Self::f_level(&self.terms[n][*c])
            })
        })
    }

    /// Dimensions of `gr_F^r` in degrees `0, -1, ..., -r`.
    pub fn gr_dims(&self, r: usize) -> Vec<usize> {
        (0..=r.min(self.m))
            .map(|n| self.terms[n].iter().filter(|b| Self::f_level(b) == r).count())
            .collect()
    }

    /// The F-degree-preserving part of `d` is the Koszul differential
    /// `w ⊗ M -> sum_p (-1)^p w_{^p} ⊗ i(w_p)·M`.
    pub fn graded_is_koszul(&self) -> bool {
        for n in 1..=self.m {
            let d = self.differential(n);
            let mut koszul = QMatrix::zeros(d.nrows(), d.ncols());
            for (col, b) in self.terms[n].iter().enumerate() {
                for p in 0..n {
                    let mut rest = b.wedge.clone();
                    rest.remove(p);
                    let s = if p % 2 == 0 { q(1) } else { q(-1) };
                    for (k, v) in self.i_mat.column(b.wedge[p]) {
                        let mut mono = b.mono.clone();
                        mono.push(k);
                        mono.sort_unstable();
                        let key = JbBasis {
                            wedge: rest.clone(),
                            mono,
                        };
                        if let Some(&row) = self.index[n - 1].get(&key) {
                            koszul.add_to(row, col, &(&s * &v));
                        }
                    }
                }
            }
            let mut graded = QMatrix::zeros(d.nrows(), d.ncols());
            for (r, c, v) in d.entries() {
                if Self::f_level(&self.terms[n - 1][r]) == Self::f_level(&self.terms[n][c]) {
                    graded.set(r, c, v);
                }
            }
            if graded != koszul {
                return false;
            }
        }
        true
    }

    pub fn h0(&self) -> H0 {
        let Cokernel { dim, proj, reps } = self.differential(1).cokernel_data();
        H0 { dim, reps, proj }
    }
}

/// Free-function forms of the main operations.
pub fn build_jb(atom: &LieAtom, m: usize) -> Result<JbComplex> {
    JbComplex::build(atom, m)
}

pub fn check_d2(cx: &JbComplex) -> D2Report {
    cx.check_d2()
}

pub fn h0(cx: &JbComplex) -> H0 {
    cx.h0()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::examples::{abelian_zero_pair, heisenberg_pair, identity_line_atom, line_atom};

    #[test]
    fn abelian_zero_pair_has_zero_differentials() {
        let cx = build_jb(&abelian_zero_pair(2, 2), 3).unwrap();
        assert!((1..=3).all(|n| cx.differential(n).is_zero()));
    }

    #[test]
    fn identity_line_lowest_differential() {
        let cx = build_jb(&identity_line_atom(), 2).unwrap();
        // d(a ⊗ b) = i(a)·b = b^2
        let d = cx.differential(1);
        let src = cx.index_of(&JbBasis { wedge: vec![0], mono: vec![0] }).unwrap();
        let dst = cx.index_of(&JbBasis { wedge: vec![], mono: vec![0, 0] }).unwrap();
        assert_eq!(d.get(dst, src), q(1));
        assert_eq!(cx.h0().dim, 0);
    }

    #[test]
    fn line_atom_h0() {
        let cx = build_jb(&line_atom(), 3).unwrap();
        assert_eq!(cx.term_dims(), vec![3, 0, 0, 0]);
        assert_eq!(cx.h0().dim, 3);
    }

    #[test]
    fn heisenberg_d2() {
        let cx = build_jb(&heisenberg_pair(), 3).unwrap();
        let rep = cx.check_d2();
        assert!(rep.ok, "{:?}", rep.failures);
        assert!(cx.preserves_f());
        assert!(cx.graded_is_koszul());
    }

    #[test]
    fn alternative_conventions_break_d2() {
        for conv in [
            JbConventions { normalization: SymNormalization::Averaged, bracket_sign: BracketSign::Front },
            JbConventions { normalization: SymNormalization::OrderedTuples, bracket_sign: BracketSign::InPlace },
            JbConventions { normalization: SymNormalization::Averaged, bracket_sign: BracketSign::InPlace },
        ] {
            let cx = JbComplex::build_with(&heisenberg_pair(), 3, conv).unwrap();
            assert!(!cx.check_d2().ok, "{conv:?}");
        }
    }

    #[test]
    fn order_zero_rejected() {
        assert!(matches!(build_jb(&line_atom(), 0), Err(Error::OrderTooSmall(0))));
    }
}
