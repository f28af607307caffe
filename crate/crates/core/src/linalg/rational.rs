//! Rational scalars and sparse vectors.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Sparse vector keyed by basis index. Zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse(format!("empty rational literal")));
    }
    Rational::from_str(t).map_err(|e| Error::Parse(format!("bad rational {t:?}: {e}")))
}

/// Formats as `"p"` when the denominator is 1 and `"p/q"` otherwise.
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Generalized binomial coefficient `a(a-1)...(a-b+1)/b!`, zero for `b < 0`.
pub fn binom(a: i64, b: i64) -> Rational {
    if b < 0 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `v += c * w`, dropping entries that cancel.
pub fn axpy(v: &mut SparseVec, c: &Rational, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        add_entry(v, *k, &(c * x));
    }
}

pub fn add_entry(v: &mut SparseVec, k: usize, x: &Rational) {
    if x.is_zero() {
        return;
    }
    let remove = match v.get_mut(&k) {
        Some(e) => {
            *e += x;
            e.is_zero()
        }
        None => {
            v.insert(k, x.clone());
            false
        }
    };
    if remove {
        v.remove(&k);
    }
}

pub fn scale(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

/// Renders a sparse vector as `c*label + ...` for witnesses.
pub fn fmt_sparse(v: &SparseVec, label: impl Fn(usize) -> String) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (k, x)) in v.iter().enumerate() {
        let neg = x.is_negative();
        let abs = x.abs();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push('*');
        }
        out.push_str(&label(*k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_with_negative_top() {
        assert_eq!(binom(-1, 0), q(1));
        assert_eq!(binom(-1, 1), q(-1));
        assert_eq!(binom(-2, 2), q(3));
        assert_eq!(binom(3, 5), q(0));
        assert_eq!(binom(4, -1), q(0));
        assert_eq!(binom(5, 2), q(10));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&qf(4, -6)), "-2/3");
        assert_eq!(fmt_rational(&q(5)), "5");
    }

    #[test]
    fn axpy_cancels() {
        let mut v: SparseVec = [(0, q(1)), (2, q(3))].into_iter().collect();
        let w: SparseVec = [(2, q(1))].into_iter().collect();
        axpy(&mut v, &q(-3), &w);
        assert_eq!(v.len(), 1);
    }
}
