use lieatom::artin::{ArtinAlgebra, ArtinSpec};
use lieatom::bernoulli::bernoulli_coeffs;
use lieatom::lie::examples::{filiform_atom, gl, heisenberg, heisenberg_hull, heisenberg_pair};
use lieatom::lie::{
    ad_pow, adjoint_filtration, alternating_at_zero, alternating_coefficient, check_structures,
    coordinate_inclusion, gl_atom, lie_closure, tensor_algebra, tensor_atom, unit,
    verify_alternating_expansion, verify_bernoulli_bracket_sum, witt_dimension, FreeNilpotentLie,
    GlVariant, Hull, LieAlgebra, LieAtom,
};
use lieatom::linalg::{q, qf, scale, Echelon, QMatrix, SparseVec};
use proptest::prelude::*;

fn comm(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.mul(b).sub(&b.mul(a))
}

/// `a_@b^m` computed with matrix commutators.
fn mat_ad_pow(a: &QMatrix, b: &QMatrix, m: usize) -> QMatrix {
    (0..m).fold(a.clone(), |x, _| comm(&x, b))
}

/// Strictly upper triangular `n x n` matrix with small integer entries.
fn upper(n: usize, seed: i64) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    let mut s = seed;
    for i in 0..n {
        for j in i + 1..n {
            s = (s * 1103515245 + 12345).rem_euclid(2147483648);
            m.set(i, j, q(s % 7 - 3));
        }
    }
    m
}

#[test]
fn alternating_expansion_holds_for_m_up_to_6() {
    for m in 1..=6 {
        assert!(verify_alternating_expansion(m).holds(), "m = {m}");
    }
}

#[test]
fn alternating_expansion_on_matrices() {
    // independent check: evaluate both sides on strictly upper triangular
    // matrices, where brackets longer than the size vanish on their own
    for m in 1..=4 {
        let n = m + 3;
        for seed in 0..3 {
            let (a1, a2, b) = (upper(n, 3 * seed + 1), upper(n, 3 * seed + 2), upper(n, 3 * seed + 3));
            let lhs = comm(&a1, &mat_ad_pow(&a2, &b, m)).sub(&comm(&a2, &mat_ad_pow(&a1, &b, m)));
            let mut rhs = QMatrix::zeros(n, n);
            for i in 0..=m / 2 {
                let inner = comm(&mat_ad_pow(&a1, &b, i), &mat_ad_pow(&a2, &b, i));
                rhs = rhs.add(&mat_ad_pow(&inner, &b, m - 2 * i).scale(&alternating_coefficient(i, m)));
            }
            assert_eq!(lhs, rhs, "m = {m}");
            let id = verify_alternating_expansion(m);
            assert_eq!(id.ambient.evaluate(&id.lhs, &[a1.clone(), a2.clone(), b.clone()]), lhs);
        }
    }
}

#[test]
fn alternating_small_cases() {
    // m = 1: [a1, a2_@b]^alt = [a1, a2]_@b
    let id = verify_alternating_expansion(1);
    let f = &id.ambient;
    let (a1, a2, b) = (f.generator(0), f.generator(1), f.generator(2));
    assert_eq!(id.rhs, f.ad_pow(&f.bracket(&a1, &a2), &b, 1));
    assert_eq!(alternating_coefficient(1, 2), q(-2));
    assert_eq!(alternating_coefficient(0, 2), q(1));
}

#[test]
fn alternating_fails_at_zero() {
    let (id, twice) = alternating_at_zero();
    assert!(!id.holds());
    assert_eq!(id.lhs, twice);
    assert_eq!(id.rhs, scale(&twice, &qf(1, 2)));
}

#[test]
fn bernoulli_bracket_sum_holds_for_m_up_to_6() {
    for m in 1..=6 {
        assert!(verify_bernoulli_bracket_sum(m).holds(), "m = {m}");
    }
}

#[test]
fn bernoulli_bracket_sum_small_cases() {
    let s = verify_bernoulli_bracket_sum(1);
    let f = &s.ambient;
    let a12 = f.bracket(&f.generator(0), &f.generator(1));
    assert_eq!(s.big_sum, scale(&a12, &q(-1)));
    assert_eq!(s.correction, a12);
    let s = verify_bernoulli_bracket_sum(2);
    let f = &s.ambient;
    let w = f.ad_pow(&f.bracket(&f.generator(0), &f.generator(1)), &f.generator(2), 1);
    assert_eq!(s.big_sum, scale(&w, &qf(1, 2)));
    assert_eq!(s.correction, scale(&w, &qf(-1, 2)));
}

#[test]
fn bernoulli_bracket_sum_on_matrices() {
    let c = bernoulli_coeffs(8);
    for m in 1..=4 {
        let n = m + 2;
        let (a1, a2, b) = (upper(n, 11), upper(n, 12), upper(n, 13));
        let mut total = mat_ad_pow(&comm(&a1, &a2), &b, m - 1).scale(&c[m - 1]);
        for i in 0..m {
            for j in 0..m - i {
                let inner = comm(&mat_ad_pow(&a1, &b, j), &mat_ad_pow(&a2, &b, i))
                    .sub(&comm(&mat_ad_pow(&a2, &b, j), &mat_ad_pow(&a1, &b, i)));
                total = total.add(&mat_ad_pow(&inner, &b, m - 1 - i - j).scale(&(&c[i] * &c[m - i])));
            }
        }
        assert!(total.is_zero(), "m = {m}");
    }
}

/// Number of Lyndon words of length `n` over `k` letters, by brute force.
fn brute_lyndon(k: usize, n: usize) -> usize {
    let mut count = 0;
    for code in 0..k.pow(n as u32) {
        let w: Vec<usize> = (0..n).map(|p| code / k.pow(p as u32) % k).collect();
        let smaller_rotation = (1..n).any(|r| {
            let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
            rot <= w
        });
        if !smaller_rotation {
            count += 1;
        }
    }
    count
}

#[test]
fn free_dimensions_match_witt_and_brute_force() {
    assert_eq!(FreeNilpotentLie::new(&["a", "b"], 2).dim(), 3);
    assert_eq!(FreeNilpotentLie::new(&["a", "b"], 3).dim(), 5);
    let ab = FreeNilpotentLie::new(&["a", "b", "c"], 1);
    assert_eq!(ab.dim(), 3);
    assert!(ab.to_lie_algebra().is_abelian());
    for k in 1..=3 {
        for n in 1..=6 {
            assert_eq!(witt_dimension(k, n), brute_lyndon(k, n), "k = {k}, n = {n}");
        }
    }
    let f = FreeNilpotentLie::new(&["a", "b", "c"], 4);
    assert_eq!(f.dim(), (1..=4).map(|n| witt_dimension(3, n)).sum::<usize>());
    assert!(f.to_lie_algebra().check().ok());
}

#[test]
fn free_brackets_above_class_vanish() {
    let f = FreeNilpotentLie::new(&["a", "b"], 3);
    let (a, b) = (f.generator(0), f.generator(1));
    assert!(f.ad_pow(&a, &b, 3).is_empty());
    assert!(!f.ad_pow(&a, &b, 2).is_empty());
}

#[test]
fn ad_pow_on_heisenberg() {
    let h = heisenberg();
    assert_eq!(ad_pow(&h, &unit(0), &unit(1), 0), unit(0));
    assert_eq!(ad_pow(&h, &unit(0), &unit(1), 1), unit(2));
    assert!(ad_pow(&h, &unit(0), &unit(1), 2).is_empty());
}

#[test]
fn structure_checks() {
    assert!(LieAlgebra::abelian(3).check().ok());
    assert!(heisenberg().check().ok());
    assert!(check_structures(&heisenberg_pair()).ok());
    let mut bad = heisenberg_pair();
    bad.i.set(1, 0, qf(1, 3));
    let rep = check_structures(&bad);
    assert!(!rep.ok());
    assert!(rep.failures.iter().any(|f| f.check.contains("equivariance")));
}

/// Dimension of `{(a1, a2) : j a1 = a2 j}` by writing out the equations
/// entry by entry.
fn intertwiner_dim(j: &[Vec<i64>]) -> usize {
    let (r, p) = (j.len(), j[0].len());
    let nvar = p * p + r * r;
    let mut rows = Vec::new();
    for row in 0..r {
        for col in 0..p {
            let mut eq = vec![q(0); nvar];
            // (j a1)[row][col] = sum_k j[row][k] a1[k][col]
            for k in 0..p {
                eq[k * p + col] += q(j[row][k]);
            }
            // (a2 j)[row][col] = sum_k a2[row][k] j[k][col]
            for k in 0..r {
                eq[p * p + row * r + k] -= q(j[k][col]);
            }
            rows.push(eq);
        }
    }
    let m = QMatrix::from_dense(rows.len(), nvar, &rows).unwrap();
    nvar - m.rank()
}

#[test]
fn gl_sub_examples() {
    for (r, dg, cok) in [(2usize, 3usize, 1usize), (3, 7, 2)] {
        let j = coordinate_inclusion(1, r);
        let a = gl_atom(&j, GlVariant::Sub).unwrap();
        let dense: Vec<Vec<i64>> = (0..r).map(|k| vec![if k == 0 { 1 } else { 0 }]).collect();
        assert_eq!(a.g.dim(), intertwiner_dim(&dense));
        assert_eq!(a.g.dim(), dg);
        // cokernel of i2 is Hom(E1, E2/E1)
        assert_eq!(a.i.cokernel_data().dim, cok);
        assert_eq!(cok, r - 1);
        assert_eq!(a.i.kernel_basis().ncols(), 0);
        assert!(check_structures(&a).ok());
        assert!(a.is_pair());
    }
}

#[test]
fn gl_other_variants() {
    let a = gl_atom(&QMatrix::zeros(2, 1), GlVariant::Vee).unwrap();
    assert_eq!(a.g.dim(), gl(1).dim() + gl(2).dim());
    assert_eq!(a.i.rank(), 5);
    let j = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
    for v in [GlVariant::Sub, GlVariant::Quot, GlVariant::Vee] {
        let a = gl_atom(&j, v).unwrap();
        assert_eq!(a.g.dim(), intertwiner_dim(&[vec![1, 2], vec![2, 4]]));
        assert!(check_structures(&a).ok());
    }
    // kernel of i2 is {(a1, 0) : j a1 = 0}, of dim p * (p - rank j) = 2
    let a = gl_atom(&j, GlVariant::Sub).unwrap();
    assert_eq!(a.i.kernel_basis().ncols(), 2);
}

#[test]
fn filtration_examples() {
    let pair = heisenberg_pair();
    let f = adjoint_filtration(pair.hull().unwrap(), 4);
    assert!(f.dims().iter().all(|d| *d == 3));

    let abelian = Hull {
        algebra: LieAlgebra::abelian(4),
        embed_h: QMatrix::from_columns(4, &[unit(0), unit(1)]),
        embed_g: QMatrix::from_columns(4, &[unit(2)]),
    };
    let f = adjoint_filtration(&abelian, 3);
    assert_eq!(f.dims(), vec![3, 3, 3, 3]);

    let hull = heisenberg_hull();
    let f = adjoint_filtration(&hull, 1);
    assert_eq!(f.dims(), vec![2, 3]);
    // h = <x, y> is not stable under ad x, so level 0 is not a module
    assert_eq!(f.report(&hull).module_failures, vec![0]);

    let atom = filiform_atom();
    let hull = atom.hull().unwrap();
    let f = adjoint_filtration(hull, 4);
    let rep = f.report(hull);
    assert!(rep.increasing);
    assert_eq!(rep.limit_dim, 5);
    assert!(rep.module_failures.is_empty());
}

#[test]
fn tensor_examples() {
    let a = ArtinAlgebra::truncated("t", 2);
    for g in [heisenberg(), gl(2), LieAlgebra::abelian(2)] {
        let gm = tensor_algebra(&g, &a);
        assert_eq!(gm.dim(), 2 * g.dim());
        assert!(gm.check().ok());
        assert!(gm.is_nilpotent());
    }
    let sq = ArtinAlgebra::new(ArtinSpec {
        vars: vec!["s".into(), "t".into()],
        relations: vec![vec![2, 0], vec![1, 1], vec![0, 2]],
        max_degree: None,
    })
    .unwrap();
    let t = tensor_atom(&filiform_atom(), &sq).unwrap();
    assert_eq!(t.h_plus_m.rank(), t.h_m.rank());
    assert_eq!(t.h_m.rank(), 8);

    // [x⊗t, y⊗t] = z⊗t^2
    let hull = heisenberg_hull();
    let hm = tensor_algebra(&hull.algebra, &a);
    let start = Echelon::from_vectors(6, &[unit(0), unit(1), unit(2), unit(3)]);
    let closure = lie_closure(&hm, &start);
    assert!(closure.contains(&unit(5)));
    assert!(!closure.contains(&unit(4)));
}

fn arb_vec(dim: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(-3i64..=3, dim).prop_map(|v| {
        v.into_iter()
            .enumerate()
            .filter(|(_, x)| *x != 0)
            .map(|(i, x)| (i, q(x)))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_a_homomorphism(x in arb_vec(5), y in arb_vec(5), s in 0i64..1000) {
        // free class-3 algebra on two letters into 4x4 strictly upper triangular matrices
        let f = FreeNilpotentLie::new(&["a", "b"], 3);
        let imgs = [upper(4, s), upper(4, s + 1)];
        let lhs = f.evaluate(&f.bracket(&x, &y), &imgs);
        let rhs = comm(&f.evaluate(&x, &imgs), &f.evaluate(&y, &imgs));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn free_jacobi(x in arb_vec(5), y in arb_vec(5), z in arb_vec(5)) {
        let f = FreeNilpotentLie::new(&["a", "b"], 3);
        let mut s = f.bracket(&x, &f.bracket(&y, &z));
        for (k, v) in f.bracket(&y, &f.bracket(&z, &x)).into_iter().chain(f.bracket(&z, &f.bracket(&x, &y))) {
            let e = s.entry(k).or_insert_with(|| q(0));
            *e += v;
        }
        s.retain(|_, v| *v != q(0));
        prop_assert!(s.is_empty());
    }

    #[test]
    fn filtration_is_increasing(c in proptest::collection::vec(-2i64..=2, 3)) {
        // g = <c0 x + c1 y + c2 z> inside h3, h = <x, y>
        let g_vec: SparseVec = c.iter().enumerate().filter(|(_, v)| **v != 0).map(|(i, v)| (i, q(*v))).collect();
        let hull = Hull {
            algebra: heisenberg(),
            embed_h: QMatrix::from_columns(3, &[unit(0), unit(1)]),
            embed_g: QMatrix::from_columns(3, &[g_vec]),
        };
        // h^[0] is stable under g when g is central or when g leaves h (then
        // h^[0] is everything); the chain always grows and terminates
        let f = adjoint_filtration(&hull, 3);
        let rep = f.report(&hull);
        prop_assert!(rep.increasing);
        prop_assert!(f.exhausted);
        prop_assert_eq!(rep.module_failures.is_empty(), (c[0] == 0 && c[1] == 0) || c[2] != 0);
    }

    #[test]
    fn gl_atoms_are_consistent(e in proptest::collection::vec(-2i64..=2, 2)) {
        let j = QMatrix::from_dense(2, 1, &[vec![q(e[0])], vec![q(e[1])]]).unwrap();
        let a: LieAtom = gl_atom(&j, GlVariant::Sub).unwrap();
        prop_assert!(check_structures(&a).ok());
        let dense = vec![vec![e[0]], vec![e[1]]];
        prop_assert_eq!(a.g.dim(), intertwiner_dim(&dense));
    }
}
