//! The Jacobi-Bernoulli complex, its degree-0 cohomology and the
//! deformation ring.

mod complex;
mod quasi;
mod random;
mod ring;

pub use complex::{
    build_jb, check_d2, h0, wedge_sort, BracketSign, D2Failure, D2Report, JbBasis, JbComplex,
    JbConventions, SymNormalization, H0,
};
pub use quasi::{induced_h0_map, quasi_iso_check, QuasiIsoReport};
pub use random::random_nilpotent_pair;
pub use ring::{
    coalgebra_report, deformation_ring, graded_dims, graded_report, tower_map, unshuffle,
    CoalgebraReport, DeformationRing, GradedReport, RingElem, TowerMap,
};
