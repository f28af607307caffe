//! Lie atoms `(g, h, i)` and their hulls.

use super::algebra::{unit, LieAlgebra};
use super::module::LieModule;
use super::report::StructureReport;
use crate::error::{Error, Result};
use crate::linalg::{axpy, q, QMatrix};

/// A Lie algebra `h+` receiving `h`, in which the action of `g` becomes the
/// bracket with the image of `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hull {
    pub algebra: LieAlgebra,
    /// `dim h+ x dim h`.
    pub embed_h: QMatrix,
    /// `dim h+ x dim g`.
    pub embed_g: QMatrix,
}

impl Hull {
    pub fn g_dim(&self) -> usize {
        self.embed_g.ncols()
    }
}

/// A Lie algebra `g`, a `g`-module `h` and an equivariant map `i: g -> h`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAtom {
    pub g: LieAlgebra,
    pub h: LieModule,
    /// `dim h x dim g`.
    pub i: QMatrix,
    pub hull: Option<Hull>,
}

impl LieAtom {
    /// The Lie pair of a homomorphism `i: g -> h`, with `h` as its own hull.
    pub fn pair(g: LieAlgebra, h: LieAlgebra, i: QMatrix) -> Result<Self> {
        if i.nrows() != h.dim() || i.ncols() != g.dim() {
            return Err(Error::Dimension(format!(
                "i must be {}x{}, got {}x{}",
                h.dim(),
                g.dim(),
                i.nrows(),
                i.ncols()
            )));
        }
        let module = LieModule::via_hom(&h, &i);
        let hull = Hull {
            embed_h: QMatrix::identity(h.dim()),
            embed_g: i.clone(),
            algebra: h,
        };
        Ok(LieAtom {
            g,
            h: module,
            i,
            hull: Some(hull),
        })
    }

    /// Derives `h`, `i` and the action from a hull in which `embed_h` is
    /// injective and `[embed_g(a), embed_h(v)]` stays inside `embed_h(h)`.
    pub fn from_hull(g: LieAlgebra, hull: Hull, h_labels: Vec<String>) -> Result<Self> {
        let eh = &hull.embed_h;
        if eh.rank() != eh.ncols() {
            return Err(Error::InvalidStructure("embed_h is not injective".into()));
        }
        let gi = hull.embed_g.columns();
        let mut i_cols = Vec::with_capacity(g.dim());
        for (a, x) in gi.iter().enumerate() {
            let c = eh.solve_sparse(x).ok_or_else(|| {
                Error::InvalidStructure(format!("embed_g(e{a}) does not lie in h"))
            })?;
            i_cols.push(c);
        }
        let i = QMatrix::from_columns(eh.ncols(), &i_cols);
        let mut h = LieModule::with_labels(h_labels);
        let hv = eh.columns();
        for (a, x) in gi.iter().enumerate() {
            for (v, y) in hv.iter().enumerate() {
                let w = hull.algebra.bracket(x, y);
                let c = eh.solve_sparse(&w).ok_or_else(|| {
                    Error::InvalidStructure(format!(
                        "h is not a g-module: [i(e{a}), f{v}] leaves h"
                    ))
                })?;
                h.set_action(a, v, c);
            }
        }
        Ok(LieAtom {
            g,
            h,
            i,
            hull: Some(hull),
        })
    }

    pub fn is_pair(&self) -> bool {
        match &self.hull {
            Some(hl) => hl.embed_h == QMatrix::identity(self.h.dim()),
            None => false,
        }
    }

    pub fn hull(&self) -> Result<&Hull> {
        self.hull.as_ref().ok_or(Error::MissingHull)
    }

    /// Runs every structural invariant of the atom and its hull.
    pub fn check(&self) -> StructureReport {
        let mut rep = StructureReport::default();
        let (dg, dh) = (self.g.dim(), self.h.dim());
        if self.i.nrows() != dh || self.i.ncols() != dg {
            rep.fail("shape", vec![], format!("i is {}x{}", self.i.nrows(), self.i.ncols()));
            return rep;
        }
        rep.absorb("g", self.g.check());
        rep.absorb("h", self.h.check(&self.g));
        if !rep.ok() {
            return rep;
        }
        // i([a,b]) = <a, i(b)> = -<b, i(a)>
        let icols = self.i.columns();
        for a in 0..dg {
            for b in 0..dg {
                let lhs = self.i.apply(&self.g.bracket_basis(a, b));
                let mid = self.h.act(&unit(a), &icols[b]);
                let mut d = lhs.clone();
                axpy(&mut d, &q(-1), &mid);
                if !d.is_empty() {
                    rep.fail("equivariance", vec![a, b], self.h.fmt(&d));
                }
                let mut d = mid;
                axpy(&mut d, &q(1), &self.h.act(&unit(b), &icols[a]));
                if !d.is_empty() && a < b {
                    rep.fail("antisymmetry", vec![a, b], self.h.fmt(&d));
                }
            }
        }
        if let Some(hl) = &self.hull {
            rep.absorb("hull", check_hull(self, hl));
        }
        rep
    }
}

fn check_hull(atom: &LieAtom, hl: &Hull) -> StructureReport {
    let mut rep = StructureReport::default();
    let hp = &hl.algebra;
    let (dg, dh) = (atom.g.dim(), atom.h.dim());
    if hl.embed_h.nrows() != hp.dim()
        || hl.embed_h.ncols() != dh
        || hl.embed_g.nrows() != hp.dim()
        || hl.embed_g.ncols() != dg
    {
        rep.fail("shape", vec![], "hull embeddings have wrong dimensions".into());
        return rep;
    }
    rep.absorb("algebra", hp.check());
    let composite = hl.embed_h.mul(&atom.i);
    for (r, c, x) in composite.sub(&hl.embed_g).entries() {
        rep.fail("composite", vec![r, c], format!("embed_h . i - embed_g = {x}"));
    }
    if let Some((a, b, d)) = atom.g.hom_defect(hp, &hl.embed_g) {
        rep.fail("homomorphism", vec![a, b], hp.fmt(&d));
    }
    let gi = hl.embed_g.columns();
    let hv = hl.embed_h.columns();
    for a in 0..dg {
        for v in 0..dh {
            let mut d = hl.embed_h.apply(&atom.h.act_basis(a, v));
            axpy(&mut d, &q(-1), &hp.bracket(&gi[a], &hv[v]));
            if !d.is_empty() {
                rep.fail("action", vec![a, v], hp.fmt(&d));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::examples::{filiform_atom, heisenberg};
    use crate::linalg::qf;

    #[test]
    fn heisenberg_pair_is_consistent() {
        let h = heisenberg();
        let atom = LieAtom::pair(h.clone(), h, QMatrix::identity(3)).unwrap();
        assert!(atom.check().ok());
        assert!(atom.is_pair());
    }

    #[test]
    fn perturbed_map_is_caught() {
        let h = heisenberg();
        let mut i = QMatrix::identity(3);
        i.set(1, 0, qf(1, 3));
        let mut atom = LieAtom::pair(h.clone(), h.clone(), QMatrix::identity(3)).unwrap();
        atom.i = i;
        let rep = atom.check();
        assert!(!rep.ok());
        assert!(rep.failures.iter().any(|f| f.check == "equivariance"));
    }

    #[test]
    fn filiform_atom_is_not_a_pair() {
        let atom = filiform_atom();
        assert!(atom.check().ok(), "{:?}", atom.check());
        assert!(!atom.is_pair());
    }
}
