//! Intertwining algebras of a linear map `j: E1 -> E2`.

use std::str::FromStr;

use super::algebra::LieAlgebra;
use super::atom::LieAtom;
use super::examples::gl;
use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix};

/// Which target the intertwining algebra maps to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlVariant {
    /// `g -> gl(E2)`.
    Sub,
    /// `g -> gl(E1)`.
    Quot,
    /// `g -> gl(E1) + gl(E2)`.
    Vee,
}

impl FromStr for GlVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sub" => Ok(GlVariant::Sub),
            "quot" => Ok(GlVariant::Quot),
            "vee" => Ok(GlVariant::Vee),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// The constraint `(a1, a2) -> j a1 - a2 j` from `gl(E1) + gl(E2)` to
/// `Hom(E1, E2)`, with `E_ab` at index `a*n + b`.
fn constraint(j: &QMatrix) -> QMatrix {
    let (p, r) = (j.ncols(), j.nrows());
    let mut c = QMatrix::zeros(r * p, p * p + r * r);
    for a in 0..p {
        for b in 0..p {
            for (row, v) in (0..r).map(|row| (row, j.get(row, a))) {
                c.add_to(row * p + b, a * p + b, &v);
            }
        }
    }
    for cc in 0..r {
        for d in 0..r {
            for s in 0..p {
                let v = j.get(d, s);
                c.add_to(cc * p + s, p * p + cc * r + d, &(-v));
            }
        }
    }
    c
}

/// The Lie pair of the intertwining algebra `g = {(a1, a2) : j a1 = a2 j}`.
pub fn gl_atom(j: &QMatrix, variant: GlVariant) -> Result<LieAtom> {
    let (p, r) = (j.ncols(), j.nrows());
    let ambient = gl(p).direct_sum(&gl(r));
    let kernel = constraint(j).kernel_basis().columns();
    let labels = (0..kernel.len()).map(|k| format!("g{k}")).collect();
    let (g, inc) = ambient.subalgebra(&kernel, labels)?;
    let rows = |lo: usize, hi: usize| {
        let mut m = QMatrix::zeros(hi - lo, inc.ncols());
        for (rr, c, v) in inc.entries() {
            if (lo..hi).contains(&rr) {
                m.set(rr - lo, c, v);
            }
        }
        m
    };
    let (target, i): (LieAlgebra, QMatrix) = match variant {
        GlVariant::Sub => (gl(r), rows(p * p, p * p + r * r)),
        GlVariant::Quot => (gl(p), rows(0, p * p)),
        GlVariant::Vee => (ambient, inc),
    };
    LieAtom::pair(g, target, i)
}

/// `Q^p -> Q^r` as the inclusion of the first `p` coordinates.
pub fn coordinate_inclusion(p: usize, r: usize) -> QMatrix {
    let mut j = QMatrix::zeros(r, p);
    for k in 0..p.min(r) {
        j.set(k, k, q(1));
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_dimensions() {
        for (r, dg, cok) in [(2, 3, 1), (3, 7, 2)] {
            let a = gl_atom(&coordinate_inclusion(1, r), GlVariant::Sub).unwrap();
            assert_eq!(a.g.dim(), dg);
            assert_eq!(a.i.cokernel_data().dim, cok);
            assert!(a.i.kernel_basis().ncols() == 0);
            assert!(a.check().ok());
        }
    }

    #[test]
    fn zero_map_vee_is_everything() {
        let a = gl_atom(&QMatrix::zeros(2, 1), GlVariant::Vee).unwrap();
        assert_eq!(a.g.dim(), 5);
        assert_eq!(a.i.rank(), 5);
    }

    #[test]
    fn sub_kernel_is_kernel_of_j() {
        // j = 0: kernel of i2 is all of gl(E1) + 0
        let a = gl_atom(&QMatrix::zeros(2, 1), GlVariant::Sub).unwrap();
        assert_eq!(a.i.kernel_basis().ncols(), 1);
    }
}
