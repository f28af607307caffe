//! Maurer-Cartan and compatibility defects, the Kodaira-Spencer vector,
//! the Deligne function and gauge transformations.

use std::collections::BTreeMap;

use serde::Serialize;

use super::dg::{DgLieAlgebra, DgLiePair};
use super::env::{EnvAlgebra, EnvElement};
use crate::artin::ArtinAlgebra;
use crate::bernoulli::bernoulli_coeffs;
use crate::error::{Error, Result};
use crate::lie::{tensor_algebra, tensor_map, LieAlgebra};
use crate::linalg::{axpy, factorial, q, qf, scale, QMatrix, Rational, SparseVec};

/// A dg Lie algebra tensored with the maximal ideal of an artinian base.
#[derive(Clone, Debug)]
pub struct DgTensor {
    pub algebra: LieAlgebra,
    pub d: QMatrix,
    pub exponent: usize,
    /// Dimension of the maximal ideal.
    pub mdim: usize,
}

impl DgTensor {
    pub fn new(g: &DgLieAlgebra, base: &ArtinAlgebra) -> Self {
        DgTensor {
            algebra: tensor_algebra(&g.algebra, base),
            d: tensor_map(&g.d, base),
            exponent: base.exponent(),
            mdim: base.dim(),
        }
    }

    /// Cohomological degree of the Lie factor of basis vector `idx`.
    pub fn degree(&self, idx: usize) -> i32 {
        self.algebra.degree(idx)
    }

    /// Whether every component of `x` has degree `deg`.
    pub fn is_homogeneous(&self, x: &SparseVec, deg: i32) -> bool {
        x.keys().all(|k| self.degree(*k) == deg)
    }

    /// `sum_k coeff(k) (ad y)^k (x)`, stopping once the power vanishes.
    fn ad_series(&self, y: &SparseVec, x: &SparseVec, coeff: impl Fn(usize) -> Rational) -> SparseVec {
        let mut out = SparseVec::new();
        let mut term = x.clone();
        for k in 0..=self.exponent + 1 {
            if term.is_empty() {
                break;
            }
            axpy(&mut out, &coeff(k), &term);
            term = self.algebra.bracket(y, &term);
        }
        out
    }

    /// `∂φ + ½[φ, φ]`.
    pub fn mc_defect(&self, phi: &SparseVec) -> SparseVec {
        let mut out = self.d.apply(phi);
        axpy(&mut out, &qf(1, 2), &self.algebra.bracket(phi, phi));
        out
    }
}

/// `sum_k (-ad s)^k (∂s) / (k+1)!`, the gauge image of the trivial
/// Maurer-Cartan element.
pub fn deligne_phi(t: &DgTensor, s: &SparseVec) -> SparseVec {
    let neg = scale(s, &q(-1));
    t.ad_series(&neg, &t.d.apply(s), |k| Rational::new(1.into(), factorial(k + 1)))
}

/// `φ'` with `∂ + φ' = exp(-ad μ)(∂ + φ)`:
/// `sum_k (-ad μ)^k φ / k! + sum_k (-ad μ)^k (∂μ) / (k+1)!`.
pub fn gauge_transform(t: &DgTensor, phi: &SparseVec, mu: &SparseVec) -> SparseVec {
    let neg = scale(mu, &q(-1));
    let mut out = t.ad_series(&neg, phi, |k| Rational::new(1.into(), factorial(k)));
    axpy(&mut out, &q(1), &deligne_phi(t, mu));
    out
}

/// A dg Lie pair over an artinian base with `φ ∈ g^1 ⊗ m`, `ψ ∈ h^0 ⊗ m`
/// given in the bases of `tensor_algebra`.
#[derive(Clone, Debug)]
pub struct DeformationDatum {
    pub pair: DgLiePair,
    pub base: ArtinAlgebra,
    pub phi: SparseVec,
    pub psi: SparseVec,
    g_m: DgTensor,
    h_m: DgTensor,
    i_m: QMatrix,
}

impl DeformationDatum {
    pub fn new(pair: DgLiePair, base: ArtinAlgebra, phi: SparseVec, psi: SparseVec) -> Result<Self> {
        let g_m = DgTensor::new(&pair.g, &base);
        let h_m = DgTensor::new(&pair.h, &base);
        if phi.keys().any(|k| *k >= g_m.algebra.dim()) || psi.keys().any(|k| *k >= h_m.algebra.dim()) {
            return Err(Error::Dimension("coefficient index out of range".into()));
        }
        if !g_m.is_homogeneous(&phi, 1) {
            return Err(Error::Precondition("phi must have degree 1".into()));
        }
        if !h_m.is_homogeneous(&psi, 0) {
            return Err(Error::Precondition("psi must have degree 0".into()));
        }
        let i_m = tensor_map(&pair.i, &base);
        Ok(DeformationDatum {
            pair,
            base,
            phi,
            psi,
            g_m,
            h_m,
            i_m,
        })
    }

    pub fn g_m(&self) -> &DgTensor {
        &self.g_m
    }

    pub fn h_m(&self) -> &DgTensor {
        &self.h_m
    }

    pub fn i_m(&self) -> &QMatrix {
        &self.i_m
    }

    /// `i(φ)` in `h^1 ⊗ m`.
    pub fn i_phi(&self) -> SparseVec {
        self.i_m.apply(&self.phi)
    }
}

pub fn mc_defect(d: &DeformationDatum) -> SparseVec {
    d.g_m.mc_defect(&d.phi)
}

/// `∂ψ - sum_n c_n ad(-ψ)^n i(φ)`.
pub fn compat_defect(d: &DeformationDatum) -> SparseVec {
    let c = bernoulli_coeffs(d.h_m.exponent + 2);
    let neg = scale(&d.psi, &q(-1));
    let series = d.h_m.ad_series(&neg, &d.i_phi(), |n| c[n].clone());
    let mut out = d.h_m.d.apply(&d.psi);
    axpy(&mut out, &q(-1), &series);
    out
}

/// The block `φ^r ⊗ (-ψ)^n` of the Kodaira-Spencer vector, keyed by
/// multisets of basis indices of `g ⊗ m` and `h ⊗ m`.
#[derive(Clone, Debug, PartialEq)]
pub struct KsComponent {
    pub r: usize,
    pub n: usize,
    pub terms: Vec<(Vec<usize>, Vec<usize>, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KsVector {
    pub components: Vec<KsComponent>,
    pub mc_defect: SparseVec,
    pub compat_defect: SparseVec,
}

impl KsVector {
    /// Both defects vanish, which is the cocycle condition in this setting.
    pub fn is_cocycle(&self) -> bool {
        self.mc_defect.is_empty() && self.compat_defect.is_empty()
    }
}

fn power(x: &SparseVec, k: usize) -> BTreeMap<Vec<usize>, Rational> {
    let mut acc: BTreeMap<Vec<usize>, Rational> = [(vec![], q(1))].into_iter().collect();
    for _ in 0..k {
        let mut next: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (key, c) in &acc {
            for (i, v) in x {
                let mut k2 = key.clone();
                k2.push(*i);
                k2.sort_unstable();
                *next.entry(k2).or_insert_with(|| q(0)) += c * v;
            }
        }
        next.retain(|_, v| *v != q(0));
        acc = next;
    }
    acc
}

/// Components `φ^r ⊗ (-ψ)^n` for `1 <= r + n <= order`, ordered by
/// `(r + n, r)`.
pub fn ks_vector(d: &DeformationDatum, order: usize) -> KsVector {
    let neg_psi = scale(&d.psi, &q(-1));
    let mut components = Vec::new();
    for total in 1..=order {
        for r in 0..=total {
            let n = total - r;
            let (pr, pn) = (power(&d.phi, r), power(&neg_psi, n));
            let mut terms = Vec::new();
            for (a, x) in &pr {
                for (b, y) in &pn {
                    terms.push((a.clone(), b.clone(), x * y));
                }
            }
            components.push(KsComponent { r, n, terms });
        }
    }
    KsVector {
        components,
        mc_defect: mc_defect(d),
        compat_defect: compat_defect(d),
    }
}

/// Outcome of checking `∂exp(ψ) = exp(ψ)·i(φ)` and
/// `∂exp(-ψ) = -i(φ)·exp(-ψ)` in the truncated enveloping algebra of `h ⊗ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwineReport {
    pub convention: String,
    pub holds: bool,
    /// The same two identities with the opposite placement or sign of
    /// `i(φ)`, each with whether it holds on this datum.
    pub alternatives: Vec<(String, bool)>,
}

pub const INTERTWINE_CONVENTION: &str = "∂exp(ψ) = exp(ψ)·i(φ); ∂exp(−ψ) = −i(φ)·exp(−ψ)";

pub fn verify_exp_intertwine(d: &DeformationDatum) -> Result<IntertwineReport> {
    if !mc_defect(d).is_empty() || !compat_defect(d).is_empty() {
        return Err(Error::Precondition("(φ, ψ) must satisfy both equations".into()));
    }
    let env = EnvAlgebra::new(&d.pair.h.algebra, &d.base);
    let psi = env.from_lie(&d.psi);
    let iphi = env.from_lie(&d.i_phi());
    let e_pos = env.exp(&psi)?;
    let e_neg = env.exp(&psi.scale(&q(-1)))?;
    let de_pos = env.derivation(&d.h_m.d, &e_pos);
    let de_neg = env.derivation(&d.h_m.d, &e_neg);
    let is = |lhs: &EnvElement, rhs: EnvElement| lhs.sub(&rhs).is_zero();
    let first = is(&de_pos, env.mul(&e_pos, &iphi));
    let second = is(&de_neg, env.mul(&iphi, &e_neg).scale(&q(-1)));
    let alternatives = vec![
        ("∂exp(ψ) = −i(φ)·exp(ψ)".to_string(), is(&de_pos, env.mul(&iphi, &e_pos).scale(&q(-1)))),
        ("∂exp(−ψ) = exp(−ψ)·i(φ)".to_string(), is(&de_neg, env.mul(&e_neg, &iphi))),
        ("i(φ) = ∂exp(ψ)·exp(−ψ)".to_string(), is(&iphi, env.mul(&de_pos, &e_neg))),
    ];
    Ok(IntertwineReport {
        convention: INTERTWINE_CONVENTION.to_string(),
        holds: first && second,
        alternatives,
    })
}
