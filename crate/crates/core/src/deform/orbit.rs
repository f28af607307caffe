//! Stability of `h^[∞] ⊗ m` under Campbell-Hausdorff products with `g ⊗ m`.

use rand::Rng;
use serde::Serialize;

use super::env::EnvAlgebra;
use crate::artin::ArtinAlgebra;
use crate::lie::{tensor_hull, Hull};
use crate::linalg::{axpy, q, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub samples: usize,
    /// Every product came out Lie-valued.
    pub lie_valued: bool,
    /// Samples (by number) whose products left `h^[∞] ⊗ m`.
    pub failures: Vec<usize>,
}

impl OrbitReport {
    pub fn ok(&self) -> bool {
        self.lie_valued && self.failures.is_empty()
    }
}

/// For random `a ∈ g ⊗ m` and `v ∈ h^[∞] ⊗ m`, checks that `bch(a, v)` and
/// `bch(v, a)` lie in `h^[∞] ⊗ m`.
pub fn orbit_closure_check(hull: &Hull, base: &ArtinAlgebra, samples: usize, rng: &mut impl Rng) -> OrbitReport {
    let t = tensor_hull(hull, base);
    let env = EnvAlgebra::new(&hull.algebra, base);
    let g_cols = t.embed_g.columns();
    let h_basis = t.h_inf_m.basis();
    let mut rep = OrbitReport {
        samples,
        lie_valued: true,
        failures: Vec::new(),
    };
    let pick = |vs: &[SparseVec], rng: &mut dyn rand::RngCore| {
        let mut x = SparseVec::new();
        for v in vs {
            let c: i64 = rng.gen_range(-2..=2);
            axpy(&mut x, &q(c), v);
        }
        x
    };
    for s in 0..samples {
        let a = pick(&g_cols, rng);
        let v = pick(&h_basis, rng);
        for (x, y) in [(&a, &v), (&v, &a)] {
            match env.bch(x, y) {
                Ok(z) => {
                    if !t.h_inf_m.contains(&z) && !rep.failures.contains(&s) {
                        rep.failures.push(s);
                    }
                }
                Err(_) => rep.lie_valued = false,
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::examples::{heisenberg_hull, heisenberg_pair};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn heisenberg_examples() {
        let base = ArtinAlgebra::truncated("t", 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(orbit_closure_check(&heisenberg_hull(), &base, 10, &mut rng).ok());
        let pair = heisenberg_pair();
        assert!(orbit_closure_check(pair.hull().unwrap(), &base, 10, &mut rng).ok());
    }
}
