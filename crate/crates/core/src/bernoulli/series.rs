//! Truncated power series over Q.

use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{Rational, q};

/// Power series known modulo `x^(order+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::new(vec![Rational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::monomial(order, 0, Rational::one())
    }

    /// `c x^p`, which is zero when `p > order`.
    pub fn monomial(order: usize, p: usize, c: Rational) -> Self {
        let mut s = PowerSeries::zero(order);
        if p <= order {
            s.coeffs[p] = c;
        }
        s
    }

    /// `1 + x + x^2 + ...`, which sees every coefficient of a diagonal operator.
    pub fn geometric(order: usize) -> Self {
        PowerSeries::new(vec![Rational::one(); order + 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the order and for negative `i`.
    pub fn coeff(&self, i: i64) -> Rational {
        if i < 0 {
            return Rational::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c: Vec<Rational> = self.coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, Rational::zero());
        PowerSeries::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<(usize, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(other.order());
        PowerSeries::new((0..=n).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let c = (0..=n)
            .map(|k| (0..=k).map(|i| &self.coeffs[i] * &other.coeffs[k - i]).sum())
            .collect();
        PowerSeries::new(c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^p`, exact at the same order.
    pub fn shift(&self, p: usize) -> Self {
        let n = self.order();
        PowerSeries::new(
            (0..=n)
                .map(|i| if i >= p { self.coeffs[i - p].clone() } else { Rational::zero() })
                .collect(),
        )
    }

    /// `x f'(x)`, exact at the same order.
    pub fn euler(&self) -> Self {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * q(i as i64))
                .collect(),
        )
    }

    /// `f'(x)`, known to one order less; `None` at order 0.
    pub fn derivative(&self) -> Option<Self> {
        if self.order() == 0 {
            return None;
        }
        Some(PowerSeries::new(
            (1..=self.order()).map(|i| &self.coeffs[i] * q(i as i64)).collect(),
        ))
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return None;
        }
        let inv0 = Rational::one() / a0;
        let n = self.order();
        let mut b = vec![Rational::zero(); n + 1];
        b[0] = inv0.clone();
        for k in 1..=n {
            let s: Rational = (1..=k).map(|i| &self.coeffs[i] * &b[k - i]).sum();
            b[k] = -s * &inv0;
        }
        Some(PowerSeries::new(b))
    }

    pub fn div(&self, unit: &Self) -> Option<Self> {
        unit.inverse().map(|u| self.mul(&u))
    }

    /// `f(g(x))` for `g` without constant term.
    pub fn compose(&self, g: &Self) -> Option<Self> {
        if !g.coeffs[0].is_zero() {
            return None;
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = PowerSeries::zero(n);
        for a in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] += a;
        }
        Some(acc)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    #[test]
    fn inverse_of_one_minus_x() {
        let s = PowerSeries::new(vec![q(1), q(-1), q(0), q(0)]);
        assert_eq!(s.inverse().unwrap(), PowerSeries::geometric(3));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = PowerSeries::geometric(5);
        let b = PowerSeries::geometric(2);
        assert_eq!(a.mul(&b).order(), 2);
        assert_eq!(a.add(&b).order(), 2);
    }

    #[test]
    fn compose_with_x_times_unit() {
        // 1/(1-y) at y = x/2 is 1/(1 - x/2)
        let g = PowerSeries::new(vec![q(0), qf(1, 2), q(0), q(0)]);
        let h = PowerSeries::geometric(3).compose(&g).unwrap();
        assert_eq!(h.coeffs(), &[q(1), qf(1, 2), qf(1, 4), qf(1, 8)]);
    }
}
