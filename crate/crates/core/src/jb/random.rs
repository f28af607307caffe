//! Seeded random nilpotent Lie pairs.

use rand::Rng;

use crate::lie::examples::{filiform4, heisenberg};
use crate::lie::{lie_closure, LieAlgebra, LieAtom};
use crate::linalg::{q, Echelon, QMatrix, SparseVec};

fn random_invertible(rng: &mut impl Rng, n: usize) -> QMatrix {
    loop {
        let mut p = QMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let v: i64 = if r == c { rng.gen_range(1..=2) } else { rng.gen_range(-1..=1) };
                p.set(r, c, q(v));
            }
        }
        if p.rank() == n {
            return p;
        }
    }
}

fn random_vec(rng: &mut impl Rng, n: usize) -> SparseVec {
    (0..n)
        .filter_map(|k| {
            let v: i64 = rng.gen_range(-2..=2);
            (v != 0).then(|| (k, q(v)))
        })
        .collect()
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|k| format!("{prefix}{k}")).collect()
}

/// A nilpotent pair `(g, h, i)` with `dim g, dim h <= max_dim` (at most 4
/// is sensible): `h` is a stock nilpotent algebra in a random basis, `g` the
/// subalgebra generated by random vectors, possibly plus an abelian summand
/// in the kernel of `i`.
pub fn random_nilpotent_pair(rng: &mut impl Rng, max_dim: usize) -> LieAtom {
    let max_dim = max_dim.clamp(1, 4);
    let mut stock: Vec<LieAlgebra> = (1..=max_dim).map(LieAlgebra::abelian).collect();
    if max_dim >= 3 {
        stock.push(heisenberg());
        stock.push(heisenberg());
    }
    if max_dim >= 4 {
        stock.push(heisenberg().direct_sum(&LieAlgebra::abelian(1)));
        stock.push(filiform4());
        stock.push(filiform4());
    }
    let base = stock[rng.gen_range(0..stock.len())].clone();
    let n = base.dim();
    let p = random_invertible(rng, n);
    let h = base.change_basis(&p, labels("h", n)).expect("invertible change of basis");
    let gens = rng.gen_range(0..=n.min(2));
    let start = Echelon::from_vectors(n, &(0..gens).map(|_| random_vec(rng, n)).collect::<Vec<_>>());
    let sub = lie_closure(&h, &start).basis();
    let (g0, incl) = h.subalgebra(&sub, labels("a", sub.len())).expect("closure is a subalgebra");
    let extra = if g0.dim() < max_dim { rng.gen_range(0..=(max_dim - g0.dim()).min(1)) } else { 0 };
    let g = g0.direct_sum(&LieAlgebra::abelian(extra));
    let mut i = QMatrix::zeros(n, g.dim());
    for (r, c, v) in incl.entries() {
        i.set(r, c, v);
    }
    LieAtom::pair(g, h, i).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_pairs_are_valid_and_nilpotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_nilpotent_pair(&mut rng, 4);
            assert!(a.check().ok());
            assert!(a.g.is_nilpotent());
            assert!(a.hull().unwrap().algebra.is_nilpotent());
            assert!(a.g.dim() <= 4 && a.h.dim() <= 4);
        }
    }
}
