//! Exact rational linear algebra.

mod echelon;
mod matrix;
mod rational;

pub use echelon::Echelon;
pub use matrix::{Cokernel, QMatrix};
pub use rational::{
    add_entry, axpy, binom, factorial, fmt_rational, fmt_sparse, parse_rational, q, qf, scale,
    sign, to_dense, to_sparse, Rational, SparseVec,
};

/// Free-function form of [`QMatrix::rank`].
pub fn rank(m: &QMatrix) -> usize {
    m.rank()
}

/// Free-function form of [`QMatrix::kernel_basis`].
pub fn kernel_basis(m: &QMatrix) -> QMatrix {
    m.kernel_basis()
}

/// Free-function form of [`QMatrix::cokernel_data`].
pub fn cokernel_data(m: &QMatrix) -> Cokernel {
    m.cokernel_data()
}

/// Free-function form of [`QMatrix::solve`].
pub fn solve(m: &QMatrix, b: &[Rational]) -> crate::Result<Option<Vec<Rational>>> {
    m.solve(b)
}
