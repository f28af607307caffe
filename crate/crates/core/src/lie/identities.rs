//! Iterated-bracket identities, checked in a free nilpotent Lie algebra.
//!
//! Notation: `a_@b = [a, b]` and `a_@b^m = (-ad b)^m (a)`; for a function
//! `f(a1, a2)`, `f^alt = f(a1, a2) - f(a2, a1)`.

use crate::bernoulli::bernoulli_coeffs;
use crate::linalg::{axpy, binom, q, sign, Rational, SparseVec};

use super::free::FreeNilpotentLie;

/// Both sides and their difference, in the Lyndon basis of `ambient`.
#[derive(Clone, Debug)]
pub struct BracketIdentity {
    pub ambient: FreeNilpotentLie,
    pub lhs: SparseVec,
    pub rhs: SparseVec,
    pub defect: SparseVec,
}

impl BracketIdentity {
    pub fn holds(&self) -> bool {
        self.defect.is_empty()
    }
}

struct Gens {
    a1: SparseVec,
    a2: SparseVec,
    b: SparseVec,
}

fn ambient(class: usize) -> (FreeNilpotentLie, Gens) {
    let f = FreeNilpotentLie::new(&["a1", "a2", "b"], class);
    let g = Gens {
        a1: f.generator(0),
        a2: f.generator(1),
        b: f.generator(2),
    };
    (f, g)
}

fn alt(g: &Gens, h: impl Fn(&SparseVec, &SparseVec) -> SparseVec) -> SparseVec {
    let mut v = h(&g.a1, &g.a2);
    axpy(&mut v, &q(-1), &h(&g.a2, &g.a1));
    v
}

/// Coefficient of `[a1_@b^i, a2_@b^i]_@b^(m-2i)` in the expansion of
/// `[a1, a2_@b^m]^alt`, as a closed binomial form.
pub fn alternating_coefficient(i: usize, m: usize) -> Rational {
    let (i, m) = (i as i64, m as i64);
    sign(i) * (binom(m - i - 1, i) + q(2) * binom(m - i - 1, i - 1))
}

/// `[a1, a2_@b^m]^alt` against `sum_i coeff(i, m) [a1_@b^i, a2_@b^i]_@b^(m-2i)`.
///
/// At `m = 0` the closed form gives `[a1, a2]` while the left side is
/// `2 [a1, a2]`; the identity is meant for `m >= 1`.
pub fn verify_alternating_expansion(m: usize) -> BracketIdentity {
    let (f, g) = ambient(m + 2);
    let lhs = alt(&g, |x, y| f.bracket(x, &f.ad_pow(y, &g.b, m)));
    let mut rhs = SparseVec::new();
    for i in 0..=m / 2 {
        let c = alternating_coefficient(i, m);
        let inner = f.bracket(&f.ad_pow(&g.a1, &g.b, i), &f.ad_pow(&g.a2, &g.b, i));
        axpy(&mut rhs, &c, &f.ad_pow(&inner, &g.b, m - 2 * i));
    }
    let mut defect = lhs.clone();
    axpy(&mut defect, &q(-1), &rhs);
    BracketIdentity {
        ambient: f,
        lhs,
        rhs,
        defect,
    }
}

/// `[a1, a2]^alt = 2 [a1, a2]`: the constant term of the recursion is 2,
/// not the value 1 that the closed form gives at `m = 0`.
pub fn alternating_at_zero() -> (BracketIdentity, SparseVec) {
    let id = verify_alternating_expansion(0);
    let (f, g) = (&id.ambient, ambient(2).1);
    let twice = crate::linalg::scale(&f.bracket(&g.a1, &g.a2), &q(2));
    (id, twice)
}

/// Terms of the Bernoulli-weighted bracket sum that makes the composite of
/// the two lowest differentials vanish:
/// `sum_{i+j<=m-1} c_i c_{m-i} [a1_@b^j, a2_@b^i]^alt _@b^(m-1-i-j)`
/// plus `c_{m-1} [a1, a2]_@b^(m-1)`.
#[derive(Clone, Debug)]
pub struct BernoulliBracketSum {
    pub ambient: FreeNilpotentLie,
    pub big_sum: SparseVec,
    pub correction: SparseVec,
    pub defect: SparseVec,
}

impl BernoulliBracketSum {
    pub fn holds(&self) -> bool {
        self.defect.is_empty()
    }
}

pub fn verify_bernoulli_bracket_sum(m: usize) -> BernoulliBracketSum {
    assert!(m >= 1);
    let (f, g) = ambient(m + 1);
    let c = bernoulli_coeffs(m + 1);
    let mut big_sum = SparseVec::new();
    for i in 0..m {
        for j in 0..m - i {
            let w = &c[i] * &c[m - i];
            if w == q(0) {
                continue;
            }
            let inner = alt(&g, |x, y| {
                f.bracket(&f.ad_pow(x, &g.b, j), &f.ad_pow(y, &g.b, i))
            });
            axpy(&mut big_sum, &w, &f.ad_pow(&inner, &g.b, m - 1 - i - j));
        }
    }
    let base = f.ad_pow(&f.bracket(&g.a1, &g.a2), &g.b, m - 1);
    let correction = crate::linalg::scale(&base, &c[m - 1]);
    let mut defect = big_sum.clone();
    axpy(&mut defect, &q(1), &correction);
    BernoulliBracketSum {
        ambient: f,
        big_sum,
        correction,
        defect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    #[test]
    fn recursion_values() {
        assert_eq!(alternating_coefficient(0, 3), q(1));
        assert_eq!(alternating_coefficient(1, 2), q(-2));
        assert_eq!(alternating_coefficient(0, 0), q(1));
    }

    #[test]
    fn first_cases_hold() {
        assert!(verify_alternating_expansion(1).holds());
        assert!(verify_alternating_expansion(2).holds());
        assert!(verify_bernoulli_bracket_sum(1).holds());
    }

    #[test]
    fn m_zero_is_off_by_the_constant_term() {
        let (id, twice) = alternating_at_zero();
        assert!(!id.holds());
        assert_eq!(id.lhs, twice);
        assert_eq!(crate::linalg::scale(&id.rhs, &q(2)), twice);
    }

    #[test]
    fn m_two_witness() {
        let r = verify_bernoulli_bracket_sum(2);
        let f = &r.ambient;
        let g = ambient(3).1;
        let base = f.bracket(&f.bracket(&g.a1, &g.a2), &g.b);
        assert_eq!(r.big_sum, crate::linalg::scale(&base, &qf(1, 2)));
        assert_eq!(r.correction, crate::linalg::scale(&base, &qf(-1, 2)));
    }
}
