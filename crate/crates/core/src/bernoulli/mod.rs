//! Bernoulli generating functions and the operators `D_k`, `D_k[r]`.
//!
//! `C(x) = x/(e^x - 1) = sum c_n x^n` with `c_n = B_n/n!`, and
//! `B(x) = C(x) + x/2`, which is even. `D_k[r]` acts diagonally on
//! coefficients, `a_i -> (-1)^k binom(i-1-r, k) a_i`, and `D_k = D_k[0]`.

mod identities;
mod series;

pub use identities::{registered_identities, variant_identities, verify_identity, Defect, DefectWitness, Identity};
pub use series::PowerSeries;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{binom, factorial, qf, sign, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    C,
    B,
}

/// `[c_0, ..., c_n]` by inverting `(e^x - 1)/x`.
pub fn bernoulli_coeffs(n: usize) -> Vec<Rational> {
    let e = PowerSeries::new(
        (0..=n)
            .map(|k| Rational::new(BigInt::from(1), factorial(k + 1)))
            .collect(),
    );
    e.inverse().expect("constant term is 1").coeffs().to_vec()
}

pub fn series(kind: SeriesKind, n: usize) -> PowerSeries {
    let mut c = bernoulli_coeffs(n);
    if kind == SeriesKind::B && n >= 1 {
        c[1] += qf(1, 2);
    }
    PowerSeries::new(c)
}

/// Multiplier of `x^i` under `D_k[r]`.
pub fn dk_weight(i: i64, k: usize, r: i64) -> Rational {
    if k == 0 {
        return Rational::from_integer(1.into());
    }
    sign(k as i64) * binom(i - 1 - r, k as i64)
}

/// `D_k[r] f`; `k = 0` returns `f`.
pub fn apply_dk(f: &PowerSeries, k: usize, r: i64) -> PowerSeries {
    if k == 0 {
        return f.clone();
    }
    PowerSeries::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if a.is_zero() {
                    Rational::zero()
                } else {
                    a * dk_weight(i as i64, k, r)
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn first_coefficients() {
        let c = bernoulli_coeffs(4);
        assert_eq!(c, vec![q(1), qf(-1, 2), qf(1, 12), q(0), qf(-1, 720)]);
        assert_eq!(bernoulli_coeffs(1), vec![q(1), qf(-1, 2)]);
    }

    #[test]
    fn c2_matches_direct_division() {
        // x / (e^x - 1) by long division of truncated series
        let n = 4;
        let num = PowerSeries::monomial(n + 1, 1, q(1));
        let den = PowerSeries::new(
            (0..=n + 1)
                .map(|k| if k == 0 { q(0) } else { Rational::new(1.into(), factorial(k)) })
                .collect(),
        );
        // divide both by x before inverting
        let num = PowerSeries::new(num.coeffs()[1..].to_vec());
        let den = PowerSeries::new(den.coeffs()[1..].to_vec());
        assert_eq!(num.div(&den).unwrap().coeff(2), qf(1, 12));
    }

    #[test]
    fn series_examples() {
        assert_eq!(series(SeriesKind::C, 2).coeffs(), &[q(1), qf(-1, 2), qf(1, 12)]);
        assert_eq!(series(SeriesKind::B, 1).coeffs(), &[q(1), q(0)]);
        assert_eq!(series(SeriesKind::C, 0).coeffs(), &[q(1)]);
        let b = series(SeriesKind::B, 20);
        for i in (1..=20).step_by(2) {
            assert_eq!(b.coeff(i), q(0));
        }
    }

    #[test]
    fn dk_examples() {
        let x2 = PowerSeries::monomial(5, 2, q(1));
        assert_eq!(apply_dk(&x2, 1, 0), x2.scale(&q(-1)));
        let x = PowerSeries::monomial(5, 1, q(1));
        for k in 1..5 {
            assert!(apply_dk(&x, k, 0).is_zero());
        }
        let f = PowerSeries::new((0..=10).map(|i| qf(i * i - 3, i + 1)).collect());
        for r in -3..=3 {
            let lhs = apply_dk(&f, 1, r);
            let rhs = apply_dk(&f, 1, 0).add(&f.scale(&q(r)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn shifted_operator_is_conjugate_on_monomials() {
        // D_k[r] x^i = x^r D_k x^(i-r)
        for k in 0..6 {
            for r in -3i64..=3 {
                for i in 0i64..12 {
                    if i - r < 0 {
                        continue;
                    }
                    assert_eq!(dk_weight(i, k, r), dk_weight(i - r, k, 0));
                }
            }
        }
    }
}
