//! Modules over a Lie algebra.

use std::collections::BTreeMap;

use super::algebra::{unit, LieAlgebra};
use super::report::StructureReport;
use crate::error::{Error, Result};
use crate::linalg::{axpy, fmt_sparse, q, QMatrix, SparseVec};

/// A `g`-module given by `<e_a, f_v>` on basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LieModule {
    labels: Vec<String>,
    action: BTreeMap<(usize, usize), SparseVec>,
}

impl LieModule {
    pub fn trivial(dim: usize) -> Self {
        LieModule::with_labels((0..dim).map(|i| format!("f{i}")).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        LieModule {
            labels,
            action: BTreeMap::new(),
        }
    }

    /// `g` acting on itself.
    pub fn adjoint(g: &LieAlgebra) -> Self {
        let mut m = LieModule::with_labels(g.labels().to_vec());
        for a in 0..g.dim() {
            for v in 0..g.dim() {
                m.set_action(a, v, g.bracket_basis(a, v));
            }
        }
        m
    }

    /// `<a, v> = [i(a), v]` for a Lie homomorphism `i: g -> h`.
    pub fn via_hom(h: &LieAlgebra, i: &QMatrix) -> Self {
        let mut m = LieModule::with_labels(h.labels().to_vec());
        for (a, ia) in i.columns().iter().enumerate() {
            for v in 0..h.dim() {
                m.set_action(a, v, h.bracket(ia, &unit(v)));
            }
        }
        m
    }

    pub fn set_action(&mut self, a: usize, v: usize, w: SparseVec) {
        if w.is_empty() {
            self.action.remove(&(a, v));
        } else {
            self.action.insert((a, v), w);
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> {
        self.action.iter().map(|((a, v), w)| (*a, *v, w))
    }

    pub fn act_basis(&self, a: usize, v: usize) -> SparseVec {
        self.action.get(&(a, v)).cloned().unwrap_or_default()
    }

    pub fn act(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, s) in x {
            for (k, t) in v {
                if let Some(w) = self.action.get(&(*a, *k)) {
                    axpy(&mut out, &(s * t), w);
                }
            }
        }
        out
    }

    pub fn validate_against(&self, g: &LieAlgebra) -> Result<()> {
        for (a, v) in self.action.keys() {
            if *a >= g.dim() || *v >= self.dim() {
                return Err(Error::Dimension(format!("action entry ({a}, {v}) out of range")));
            }
        }
        if self.action.values().any(|w| w.keys().any(|&k| k >= self.dim())) {
            return Err(Error::Dimension("action value out of range".into()));
        }
        Ok(())
    }

    /// Checks `<[x,y], v> = <x,<y,v>> - <y,<x,v>>` on basis triples.
    pub fn check(&self, g: &LieAlgebra) -> StructureReport {
        let mut rep = StructureReport::default();
        if let Err(e) = self.validate_against(g) {
            rep.fail("shape", vec![], e.to_string());
            return rep;
        }
        for a in 0..g.dim() {
            for b in a + 1..g.dim() {
                for v in 0..self.dim() {
                    let mut d = self.act(&g.bracket_basis(a, b), &unit(v));
                    axpy(&mut d, &q(-1), &self.act(&unit(a), &self.act_basis(b, v)));
                    axpy(&mut d, &q(1), &self.act(&unit(b), &self.act_basis(a, v)));
                    if !d.is_empty() {
                        rep.fail("module", vec![a, b, v], self.fmt(&d));
                    }
                }
            }
        }
        rep
    }

    pub fn fmt(&self, v: &SparseVec) -> String {
        fmt_sparse(v, |k| self.labels[k].clone())
    }
}
