//! Small stock algebras and atoms used by tests and the command line.

use super::algebra::{unit, LieAlgebra};
use super::atom::{Hull, LieAtom};
use crate::linalg::{q, QMatrix, SparseVec};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// `[x, y] = z`.
pub fn heisenberg() -> LieAlgebra {
    let mut h = LieAlgebra::with_labels(labels(&["x", "y", "z"]));
    h.set_bracket(0, 1, unit(2)).unwrap();
    h
}

/// Filiform algebra of dimension 4: `[e1, e2] = e3`, `[e1, e3] = e4`.
pub fn filiform4() -> LieAlgebra {
    let mut h = LieAlgebra::with_labels(labels(&["e1", "e2", "e3", "e4"]));
    h.set_bracket(0, 1, unit(2)).unwrap();
    h.set_bracket(0, 2, unit(3)).unwrap();
    h
}

/// Free nilpotent algebra of class 3 on `x, y`, in the basis
/// `x, y, [x,y], [x,[x,y]], [y,[x,y]]`.
pub fn free_class3_two() -> LieAlgebra {
    let mut h = LieAlgebra::with_labels(labels(&["x", "y", "[x,y]", "[x,[x,y]]", "[y,[x,y]]"]));
    h.set_bracket(0, 1, unit(2)).unwrap();
    h.set_bracket(0, 2, unit(3)).unwrap();
    h.set_bracket(1, 2, unit(4)).unwrap();
    h
}

/// `gl(n)` in the basis `E_ab`, index `a*n + b`.
pub fn gl(n: usize) -> LieAlgebra {
    let mut names = Vec::new();
    for a in 0..n {
        for b in 0..n {
            names.push(format!("E{a}{b}"));
        }
    }
    let mut g = LieAlgebra::with_labels(names);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (i, j) = (a * n + b, c * n + d);
                    if i >= j {
                        continue;
                    }
                    let mut v = SparseVec::new();
                    if b == c {
                        crate::linalg::add_entry(&mut v, a * n + d, &q(1));
                    }
                    if d == a {
                        crate::linalg::add_entry(&mut v, c * n + b, &q(-1));
                    }
                    g.set_bracket(i, j, v).unwrap();
                }
            }
        }
    }
    g
}

/// `(g = 0, h = 0)`.
pub fn trivial_atom() -> LieAtom {
    LieAtom::pair(LieAlgebra::abelian(0), LieAlgebra::abelian(0), QMatrix::zeros(0, 0)).unwrap()
}

/// `(g = 0, h = Q)`: unobstructed with a one-dimensional tangent space.
pub fn line_atom() -> LieAtom {
    let h = LieAlgebra::with_labels(labels(&["b"]));
    LieAtom::pair(LieAlgebra::abelian(0), h, QMatrix::zeros(1, 0)).unwrap()
}

/// `(g = h = Q, i = id)`, quasi-isomorphic to the trivial atom.
pub fn identity_line_atom() -> LieAtom {
    let g = LieAlgebra::with_labels(labels(&["a"]));
    let h = LieAlgebra::with_labels(labels(&["b"]));
    LieAtom::pair(g, h, QMatrix::identity(1)).unwrap()
}

/// Abelian pair with `i = 0`.
pub fn abelian_zero_pair(dg: usize, dh: usize) -> LieAtom {
    LieAtom::pair(LieAlgebra::abelian(dg), LieAlgebra::abelian(dh), QMatrix::zeros(dh, dg)).unwrap()
}

/// `g = h = h3`, `i = id`.
pub fn heisenberg_pair() -> LieAtom {
    let h = heisenberg();
    LieAtom::pair(h.clone(), h, QMatrix::identity(3)).unwrap()
}

/// A genuine atom whose module is not a subalgebra of its hull.
///
/// The hull is [`free_class3_two`], `h = <x, y, [x,y], [x,[x,y]]>` and
/// `g = <x, [x,[x,y]]>` (abelian). Here `[[x, y], y]` leaves `h`.
pub fn filiform_atom() -> LieAtom {
    let hp = free_class3_two();
    let embed_h = QMatrix::from_columns(5, &[unit(0), unit(1), unit(2), unit(3)]);
    let embed_g = QMatrix::from_columns(5, &[unit(0), unit(3)]);
    let g = LieAlgebra::with_labels(labels(&["x", "[x,[x,y]]"]));
    let hull = Hull {
        algebra: hp,
        embed_h,
        embed_g,
    };
    LieAtom::from_hull(g, hull, labels(&["x", "y", "[x,y]", "[x,[x,y]]"])).unwrap()
}

/// Hull data `g = <x> -> h3 <- h = <x, y>`. The span of `x, y` is not stable
/// under `ad x`, so this is not an atom; it only feeds filtration and
/// orbit-closure checks.
pub fn heisenberg_hull() -> Hull {
    Hull {
        algebra: heisenberg(),
        embed_h: QMatrix::from_columns(3, &[unit(0), unit(1)]),
        embed_g: QMatrix::from_columns(3, &[unit(0)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stock_algebras_are_lie() {
        for g in [heisenberg(), filiform4(), free_class3_two(), gl(2), gl(3)] {
            assert!(g.check().ok());
        }
        assert!(filiform4().is_nilpotent());
        assert!(!gl(2).is_nilpotent());
    }

    #[test]
    fn stock_atoms_are_consistent() {
        for a in [trivial_atom(), line_atom(), identity_line_atom(), heisenberg_pair(), abelian_zero_pair(2, 3)] {
            assert!(a.check().ok());
        }
    }
}
