//! Dg Lie pairs over artinian bases: Maurer-Cartan and compatibility
//! equations, Kodaira-Spencer vectors, enveloping-algebra exponentials and
//! gauge transformations.

mod dg;
mod env;
mod mc;
mod orbit;

pub use dg::{map_with_forms, with_forms, DgLieAlgebra, DgLiePair, PolyForms};
pub use env::{EnvAlgebra, EnvElement, Word};
pub use mc::{
    compat_defect, deligne_phi, gauge_transform, ks_vector, mc_defect, verify_exp_intertwine,
    DeformationDatum, DgTensor, IntertwineReport, KsComponent, KsVector, INTERTWINE_CONVENTION,
};
pub use orbit::{orbit_closure_check, OrbitReport};
