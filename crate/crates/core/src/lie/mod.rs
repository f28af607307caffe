//! Lie algebras, modules, atoms and hulls.

mod algebra;
mod atom;
pub mod examples;
mod filtration;
mod free;
mod gl;
mod identities;
mod module;
mod report;
mod tensor;

pub use algebra::{ad_pow, unit, LieAlgebra};
pub use atom::{Hull, LieAtom};
pub use filtration::{adjoint_filtration, AdjointFiltration, FiltrationReport};
pub use free::{is_lyndon, lyndon_words, witt_dimension, FreeNilpotentLie, Poly, Word};
pub use gl::{coordinate_inclusion, gl_atom, GlVariant};
pub use identities::{
    alternating_at_zero, alternating_coefficient, verify_alternating_expansion,
    verify_bernoulli_bracket_sum, BernoulliBracketSum, BracketIdentity,
};
pub use module::LieModule;
pub use report::{StructureFailure, StructureReport};
pub use tensor::{lie_closure, tensor_algebra, tensor_atom, tensor_hull, tensor_map, TensoredAtom};

/// Runs all structural invariants of an atom (including its algebra,
/// module and hull).
pub fn check_structures(atom: &LieAtom) -> StructureReport {
    atom.check()
}
