//! The coalgebra structure on `K^0`, the deformation ring dual to `H^0`,
//! and the tower maps between orders.

use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{JbBasis, JbComplex, H0};
use crate::artin::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::lie::LieAtom;
use crate::linalg::{add_entry, axpy, binom, fmt_rational, q, Echelon, QMatrix, Rational, SparseVec};

/// Reduced unshuffle `M -> sum_N prod_k binom(c_k, d_k) N ⊗ (M - N)` over
/// sub-multisets `N` other than `∅` and `M`.
pub fn unshuffle(mono: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, Rational)> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &k in mono {
        match counts.last_mut() {
            Some((l, c)) if *l == k => *c += 1,
            _ => counts.push((k, 1)),
        }
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; counts.len()];
    loop {
        let size: usize = choice.iter().sum();
        if size > 0 && size < mono.len() {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut w = q(1);
            for ((k, c), d) in counts.iter().zip(&choice) {
                left.extend(std::iter::repeat(*k).take(*d));
                right.extend(std::iter::repeat(*k).take(c - d));
                w *= binom(*c as i64, *d as i64);
            }
            out.push((left, right, w));
        }
        // odometer over 0..=c_k
        let mut p = 0;
        loop {
            if p == counts.len() {
                return out;
            }
            if choice[p] < counts[p].1 {
                choice[p] += 1;
                break;
            }
            choice[p] = 0;
            p += 1;
        }
    }
}

/// Coassociativity and cocommutativity on `K^0`, and descent to `H^0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoalgebraReport {
    pub coassociative: bool,
    pub cocommutative: bool,
    pub descends: bool,
}

impl CoalgebraReport {
    pub fn ok(&self) -> bool {
        self.coassociative && self.cocommutative && self.descends
    }
}

type Triple = (Vec<usize>, Vec<usize>, Vec<usize>);

fn add_triple(m: &mut BTreeMap<Triple, Rational>, k: Triple, x: Rational) {
    *m.entry(k).or_insert_with(|| q(0)) += x;
}

pub fn coalgebra_report(cx: &JbComplex, h0: &H0) -> CoalgebraReport {
    let basis = cx.term(0);
    let mut coassociative = true;
    let mut cocommutative = true;
    for b in basis {
        let d = unshuffle(&b.mono);
        let mut sym: BTreeMap<(Vec<usize>, Vec<usize>), Rational> = BTreeMap::new();
        for (l, r, w) in &d {
            *sym.entry((l.clone(), r.clone())).or_insert_with(|| q(0)) += w;
            *sym.entry((r.clone(), l.clone())).or_insert_with(|| q(0)) -= w;
        }
        if sym.values().any(|v| *v != q(0)) {
            cocommutative = false;
        }
        let mut diff: BTreeMap<Triple, Rational> = BTreeMap::new();
        for (l, r, w) in &d {
            for (ll, lr, w2) in unshuffle(l) {
                add_triple(&mut diff, (ll, lr, r.clone()), w * &w2);
            }
            for (rl, rr, w2) in unshuffle(r) {
                add_triple(&mut diff, (l.clone(), rl, rr), -(w * &w2));
            }
        }
        if diff.values().any(|v| *v != q(0)) {
            coassociative = false;
        }
    }
    let descends = descent_defect(cx, h0).is_none();
    CoalgebraReport {
        coassociative,
        cocommutative,
        descends,
    }
}

/// Image of `Δ(x)` in `H^0 ⊗ H^0`, keyed by pairs of class indices.
fn delta_bar(cx: &JbComplex, proj_cols: &[SparseVec], x: &SparseVec) -> BTreeMap<(usize, usize), Rational> {
    let basis = cx.term(0);
    let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (k, c) in x {
        for (l, r, w) in unshuffle(&basis[*k].mono) {
            let il = cx.index_of(&JbBasis { wedge: vec![], mono: l }).expect("sub-multiset kept");
            let ir = cx.index_of(&JbBasis { wedge: vec![], mono: r }).expect("sub-multiset kept");
            let cw = c * &w;
            for (u, a) in &proj_cols[il] {
                for (v, b) in &proj_cols[ir] {
                    *out.entry((*u, *v)).or_insert_with(|| q(0)) += &cw * a * b;
                }
            }
        }
    }
    out.retain(|_, v| *v != q(0));
    out
}

/// First column of `d^-1` whose coproduct does not vanish in `H^0 ⊗ H^0`.
fn descent_defect(cx: &JbComplex, h0: &H0) -> Option<usize> {
    let proj_cols = h0.proj.columns();
    let d = cx.differential(1);
    d.columns()
        .iter()
        .position(|col| !delta_bar(cx, &proj_cols, col).is_empty())
}

/// `Q ⊕ H^0(J♯_m)^*` with multiplication dual to the coproduct.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationRing {
    pub m: usize,
    /// Labels of the dual basis of the maximal ideal.
    pub labels: Vec<String>,
    /// `table[r][s] = e_r · e_s` in the ideal basis.
    table: Vec<Vec<SparseVec>>,
}

/// A ring element `c + x` with `x` in the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElem {
    pub unit: Rational,
    pub ideal: SparseVec,
}

impl DeformationRing {
    pub fn from_complex(cx: &JbComplex) -> Result<Self> {
        let h0 = cx.h0();
        DeformationRing::from_h0(cx, &h0)
    }

    pub fn from_h0(cx: &JbComplex, h0: &H0) -> Result<Self> {
        if let Some(col) = descent_defect(cx, h0) {
            let b = &cx.term(1)[col];
            return Err(Error::DescentFailure(format!(
                "coproduct of d({}) is not in im⊗K + K⊗im",
                cx.fmt_basis(b)
            )));
        }
        let n = h0.dim;
        let proj_cols = h0.proj.columns();
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for (u, rep) in h0.reps.iter().enumerate() {
            let mut x = SparseVec::new();
            x.insert(*rep, q(1));
            for ((r, s), c) in delta_bar(cx, &proj_cols, &x) {
                add_entry(&mut table[r][s], u, &c);
            }
        }
        let labels = h0
            .reps
            .iter()
            .map(|r| format!("({})*", cx.fmt_mono(&cx.term(0)[*r].mono)))
            .collect();
        Ok(DeformationRing {
            m: cx.m(),
            labels,
            table,
        })
    }

    /// Dimension over `Q`, counting the unit.
    pub fn dim(&self) -> usize {
        self.table.len() + 1
    }

    pub fn ideal_dim(&self) -> usize {
        self.table.len()
    }

    pub fn mul_basis(&self, r: usize, s: usize) -> &SparseVec {
        &self.table[r][s]
    }

    /// Product of two ideal elements.
    pub fn mul_ideal(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, a) in x {
            for (s, b) in y {
                axpy(&mut out, &(a * b), &self.table[*r][*s]);
            }
        }
        out
    }

    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let mut ideal = self.mul_ideal(&x.ideal, &y.ideal);
        axpy(&mut ideal, &x.unit, &y.ideal);
        axpy(&mut ideal, &y.unit, &x.ideal);
        RingElem {
            unit: &x.unit * &y.unit,
            ideal,
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.ideal_dim();
        (0..n).all(|r| (0..n).all(|s| self.table[r][s] == self.table[s][r]))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.ideal_dim();
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let mut e = SparseVec::new();
                    e.insert(t, q(1));
                    let left = self.mul_ideal(&self.table[r][s], &e);
                    let mut f = SparseVec::new();
                    f.insert(r, q(1));
                    let right = self.mul_ideal(&f, &self.table[s][t]);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `m, m^2, ...` as subspaces of the ideal, ending with the first zero power.
    pub fn ideal_powers(&self) -> Vec<Echelon> {
        let n = self.ideal_dim();
        let mut cur = Echelon::from_vectors(n, &(0..n).map(|k| [(k, q(1))].into_iter().collect()).collect::<Vec<SparseVec>>());
        let mut out = vec![cur.clone()];
        while !cur.is_zero_space() {
            let mut next = Echelon::new(n);
            for x in cur.basis() {
                for s in 0..n {
                    let mut e = SparseVec::new();
                    e.insert(s, q(1));
                    next.insert(&self.mul_ideal(&x, &e));
                }
            }
            out.push(next.clone());
            cur = next;
        }
        out
    }

    /// Smallest `e` with `m^e = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.ideal_powers().len()
    }

    /// `dim m^r / m^(r+1)` for `r = 1..=m`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let pw = self.ideal_powers();
        let rank = |r: usize| pw.get(r - 1).map_or(0, Echelon::rank);
        let mut out: Vec<usize> = (1..=self.m).map(|r| rank(r) - rank(r + 1)).collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Whether sending `e_u` to `images[u]` in the maximal ideal of `base`
    /// defines a ring map, i.e. the corresponding element of
    /// `H^0 ⊗ m_base` is group-like.
    pub fn is_morphic(&self, base: &ArtinAlgebra, images: &[SparseVec]) -> bool {
        let n = self.ideal_dim();
        if images.len() != n {
            return false;
        }
        for r in 0..n {
            for s in 0..n {
                let lhs = base.mul_elems(&images[r], &images[s]);
                let mut rhs = SparseVec::new();
                for (u, c) in &self.table[r][s] {
                    axpy(&mut rhs, c, &images[*u]);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Nonzero products `[r, s, [[u, "p/q"], ...]]` with `r <= s`.
    pub fn sparse_table(&self) -> Vec<(usize, usize, Vec<(usize, String)>)> {
        let n = self.ideal_dim();
        let mut out = Vec::new();
        for r in 0..n {
            for s in r..n {
                let v = &self.table[r][s];
                if !v.is_empty() {
                    out.push((r, s, v.iter().map(|(u, c)| (*u, fmt_rational(c))).collect()));
                }
            }
        }
        out
    }
}

pub fn deformation_ring(cx: &JbComplex) -> Result<DeformationRing> {
    DeformationRing::from_complex(cx)
}

/// The ring map `η: R_m -> R_(m-1)`, dual to `H^0(J♯_(m-1)) -> H^0(J♯_m)`.
#[derive(Clone, Debug)]
pub struct TowerMap {
    /// `ideal_dim(R_(m-1)) x ideal_dim(R_m)`.
    pub eta: QMatrix,
    pub surjective: bool,
    pub multiplicative: bool,
    /// `η(m^m) = 0`.
    pub kills_top_power: bool,
}

impl TowerMap {
    pub fn ok(&self) -> bool {
        self.surjective && self.multiplicative && self.kills_top_power
    }
}

pub fn tower_map(lower: &JbComplex, upper: &JbComplex) -> Result<TowerMap> {
    if lower.m() + 1 != upper.m() {
        return Err(Error::Precondition("tower maps connect consecutive orders".into()));
    }
    let shared = lower.letter_levels().iter().filter(|l| **l < upper.m()).count();
    for k in 0..shared {
        if lower.letter_basis().column(k) != upper.letter_basis().column(k) {
            return Err(Error::Precondition("letter bases of the two orders disagree".into()));
        }
    }
    let (h_lo, h_up) = (lower.h0(), upper.h0());
    let r_lo = DeformationRing::from_h0(lower, &h_lo)?;
    let r_up = DeformationRing::from_h0(upper, &h_up)?;
    // iota: classes of the lower order mapped to classes of the upper one
    let mut eta = QMatrix::zeros(h_lo.dim, h_up.dim);
    for (u_lo, rep) in h_lo.reps.iter().enumerate() {
        let b = &lower.term(0)[*rep];
        let k = upper.index_of(b).ok_or_else(|| {
            Error::Precondition(format!("{} missing at order {}", lower.fmt_basis(b), upper.m()))
        })?;
        for (u_up, c) in h_up.proj.column(k) {
            eta.set(u_lo, u_up, c);
        }
    }
    let surjective = eta.rank() == h_lo.dim;
    let n = r_up.ideal_dim();
    let unit_vec = |k: usize| -> SparseVec { [(k, q(1))].into_iter().collect() };
    let mut multiplicative = true;
    for r in 0..n {
        for s in 0..n {
            let lhs = eta.apply(r_up.mul_basis(r, s));
            let rhs = r_lo.mul_ideal(&eta.apply(&unit_vec(r)), &eta.apply(&unit_vec(s)));
            if lhs != rhs {
                multiplicative = false;
            }
        }
    }
    let powers = r_up.ideal_powers();
    let kills_top_power = powers
        .get(upper.m() - 1)
        .map_or(true, |p| p.basis().iter().all(|v| eta.apply(v).is_empty()));
    Ok(TowerMap {
        eta,
        surjective,
        multiplicative,
        kills_top_power,
    })
}

/// Graded dimensions of `R_m` against the unobstructed count
/// `dim Sym^r(H^1)` for the two-term complex `g -> h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedReport {
    pub graded_dims: Vec<usize>,
    pub h1: usize,
    pub unobstructed: Vec<usize>,
    pub bound_ok: bool,
}

pub fn graded_dims(r: &DeformationRing) -> Vec<usize> {
    r.graded_dims()
}

pub fn graded_report(atom: &LieAtom, r: &DeformationRing) -> GradedReport {
    let h1 = atom.h.dim() - atom.i.rank();
    let mut unobstructed: Vec<usize> = (1..=r.m)
        .map(|k| {
            let b = binom((h1 + k) as i64 - 1, k as i64);
            b.to_integer().try_into().unwrap_or(usize::MAX)
        })
        .collect();
    while unobstructed.last() == Some(&0) {
        unobstructed.pop();
    }
    let graded_dims = r.graded_dims();
    GradedReport {
        bound_ok: graded_dims == unobstructed,
        graded_dims,
        h1,
        unobstructed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jb::complex::build_jb;
    use crate::lie::examples::{identity_line_atom, line_atom};

    #[test]
    fn unshuffle_of_powers() {
        let d = unshuffle(&[0, 0, 0]);
        assert_eq!(d.len(), 2);
        assert!(d.contains(&(vec![0], vec![0, 0], q(3))));
        assert!(d.contains(&(vec![0, 0], vec![0], q(3))));
        assert_eq!(unshuffle(&[1]).len(), 0);
        assert_eq!(unshuffle(&[0, 1]).len(), 2);
    }

    #[test]
    fn line_ring_is_divided_powers() {
        let cx = build_jb(&line_atom(), 3).unwrap();
        let r = deformation_ring(&cx).unwrap();
        assert_eq!(r.dim(), 4);
        assert_eq!(r.mul_basis(0, 0), &[(1, q(2))].into_iter().collect::<SparseVec>());
        assert_eq!(r.mul_basis(0, 1), &[(2, q(3))].into_iter().collect::<SparseVec>());
        assert!(r.mul_basis(1, 2).is_empty());
        assert!(r.is_associative() && r.is_commutative());
        assert_eq!(r.graded_dims(), vec![1, 1, 1]);
        assert_eq!(r.nilpotency_index(), 4);
    }

    #[test]
    fn quasi_trivial_ring() {
        let cx = build_jb(&identity_line_atom(), 3).unwrap();
        let r = deformation_ring(&cx).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.graded_dims().is_empty());
    }
}
