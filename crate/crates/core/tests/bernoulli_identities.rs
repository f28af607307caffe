use lieatom::bernoulli::{
    apply_dk, bernoulli_coeffs, variant_identities, registered_identities, series,
    verify_identity, Identity, PowerSeries, SeriesKind,
};
use lieatom::linalg::{factorial, q, qf, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Bernoulli numbers from `sum_{k<=n} binom(n+1, k) B_k = 0`, independent of
/// any series inversion.
fn oracle_bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![q(1)];
    for m in 1..=n {
        let mut s = q(0);
        let mut binom = BigInt::from(1);
        for k in 0..m {
            s += Rational::from_integer(binom.clone()) * &b[k];
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / q(m as i64 + 1));
    }
    b
}

#[test]
fn coefficients_match_recursive_oracle() {
    let c = bernoulli_coeffs(30);
    let b = oracle_bernoulli_numbers(30);
    for n in 0..=30 {
        assert_eq!(c[n], &b[n] / Rational::from_integer(factorial(n)), "n = {n}");
    }
    for m in 1..15 {
        assert_eq!(c[2 * m + 1], q(0));
    }
}

#[test]
fn every_registered_identity_vanishes_to_order_30() {
    for id in registered_identities(8, 3) {
        let d = verify_identity(id, 30);
        assert!(d.is_zero(), "{id}: {:?}", d.first_nonzero());
    }
}

#[test]
fn double_sum_agrees_for_small_n() {
    assert!(verify_identity(Identity::DoubleSum, 12).is_zero());
}

#[test]
fn quadratic_recursion_example() {
    assert!(verify_identity(Identity::QuadRec, 12).is_zero());
}

#[test]
fn variant_forms_fail_with_stable_witnesses() {
    for id in variant_identities() {
        assert!(!verify_identity(id, 30).is_zero(), "{id} unexpectedly holds");
    }
    // the coefficient variant fails only through c_1, so at odd m
    let d = verify_identity(Identity::ProductCoeffVariant { k: 1 }, 30);
    for (_, s) in &d.parts {
        for (m, x) in s.coeffs().iter().enumerate() {
            if m % 2 == 0 {
                assert_eq!(*x, q(0), "even m = {m}");
            }
        }
    }
    // at r = 0 the shifted variant agrees with the product rule once the
    // -xC tail is dropped
    let d = verify_identity(Identity::ShiftedProductVariant { k: 3, r: 0 }, 30);
    assert!(d.parts[1].1.is_zero());
    assert!(!d.parts[0].1.is_zero());
    // the binom(r+1-j, j) expansion already fails at r = 0
    let w = verify_identity(Identity::ShiftExpandVariant { k: 2, r: 0 }, 10)
        .first_nonzero()
        .unwrap();
    assert_eq!(w.part, "on C");
}

#[test]
fn shift_expand_at_k1() {
    for r in -3..=3 {
        assert!(verify_identity(Identity::ShiftExpand { k: 1, r }, 10).is_zero());
    }
}

#[test]
fn even_series_and_small_values() {
    let c = series(SeriesKind::C, 6);
    assert_eq!(c.coeff(2), qf(1, 12));
    assert_eq!(c.coeff(4), qf(-1, 720));
    assert_eq!(c.coeff(6), qf(1, 30240));
}

fn small_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec((-20i64..20, 1i64..6), order + 1)
        .prop_map(|v| PowerSeries::new(v.into_iter().map(|(a, b)| qf(a, b)).collect()))
}

proptest! {
    #[test]
    fn dk_shift_is_conjugation_on_monomials(k in 0usize..6, r in -3i64..=3, i in 0usize..12) {
        // D_k[r] x^i = x^r D_k x^(i-r) whenever i >= r
        prop_assume!(i as i64 >= r);
        let n = 20;
        let lhs = apply_dk(&PowerSeries::monomial(n, i, q(1)), k, r);
        let j = (i as i64 - r) as usize;
        let inner = apply_dk(&PowerSeries::monomial(n, j, q(1)), k, 0);
        prop_assert_eq!(lhs.coeff(i as i64), inner.coeff(j as i64));
    }

    #[test]
    fn shift_expansion_holds_on_random_series(f in small_series(12), k in 1usize..6, r in -3i64..=3) {
        let mut rhs = PowerSeries::zero(12);
        for j in 0..=k {
            let w = lieatom::linalg::binom(r + j as i64 - 1, j as i64);
            rhs = rhs.add(&apply_dk(&f, k - j, 0).scale(&w));
        }
        prop_assert_eq!(apply_dk(&f, k, r), rhs);
    }

    #[test]
    fn inverse_is_two_sided(f in small_series(8)) {
        prop_assume!(f.coeff(0) != q(0));
        let g = f.inverse().unwrap();
        prop_assert_eq!(f.mul(&g), PowerSeries::one(8));
    }

    #[test]
    fn rational_round_trip(a in -1000i64..1000, b in 1i64..1000) {
        prop_assume!(a != 0);
        let x = qf(a, b);
        prop_assert_eq!(&x * (q(1) / &x), q(1));
    }
}
