//! Exact computations with Lie atoms over Q.
//!
//! The crate builds Jacobi-Bernoulli complexes of finite-dimensional Lie atoms,
//! computes their degree-zero cohomology and the dual deformation rings, and
//! checks the Bernoulli operator calculus, iterated-bracket identities and
//! Maurer-Cartan data that the construction rests on. Everything is exact.

pub mod artin;
pub mod bernoulli;
pub mod deform;
pub mod error;
pub mod format;
pub mod jb;
pub mod lie;
pub mod linalg;

pub use error::{Error, Result};
