//! Exact verifiers for the Bernoulli operator identities.
//!
//! Each verifier returns left side minus right side. Series forms compare
//! truncated series; coefficient forms put the defect for `x^m` at index `m`.
//! The `*Variant` identities are nearby forms with a sign or index slip that
//! do not hold. They are kept so that their failure stays pinned by tests.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{apply_dk, bernoulli_coeffs, series, PowerSeries, SeriesKind};
use crate::error::{Error, Result};
use crate::linalg::{binom, factorial, q, qf, sign, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `c_n` against the alternating double sum of `i^n`.
    DoubleSum,
    /// `C^2 + x C' - (1 - x) C = 0`.
    RiccatiC,
    /// `B^2 = -x B' + B + x^2/4`.
    RiccatiB,
    /// `(2m+1) c_{2m} + sum_{0<i<m} c_{2i} c_{2m-2i} = 0` for `m > 1`.
    QuadRec,
    /// `B D_k B = sum_i c_{2i} x^{2i} D_{k+1-2i} B` and
    /// `C D_k C = sum_i c_i x^i D_{k+1-i} C`.
    Product { k: usize },
    /// Coefficient extraction of [`Identity::Product`].
    ProductCoeff { k: usize },
    /// `D_k[r] = sum_j binom(r+j-1, j) D_{k-j}`.
    ShiftExpand { k: usize, r: i64 },
    /// Shifted product rule, see [`shifted_product`].
    ShiftedProduct { k: usize, r: i64 },
    /// Coefficient extraction of [`Identity::ShiftedProduct`].
    ShiftedProductCoeff { k: usize, r: i64 },
    /// Coefficient form with `c_i c_{m-i}` on both right sides and no sign
    /// `(-1)^i`; fails for odd `m`.
    ProductCoeffVariant { k: usize },
    /// Expansion with `binom(r+1-j, j)`; fails for `k >= 2`.
    ShiftExpandVariant { k: usize, r: i64 },
    /// Unshifted product rule with the shift inserted and a `-x C` tail.
    ShiftedProductVariant { k: usize, r: i64 },
    /// Coefficient form with a `-c_{m-1}` tail.
    ShiftedProductCoeffVariant { k: usize, r: i64 },
}

impl Identity {
    pub fn tag(&self) -> String {
        use Identity::*;
        match *self {
            DoubleSum => "double_sum".into(),
            RiccatiC => "riccati_c".into(),
            RiccatiB => "riccati_b".into(),
            QuadRec => "quad_rec".into(),
            Product { k } => format!("product:{k}"),
            ProductCoeff { k } => format!("product_coeff:{k}"),
            ShiftExpand { k, r } => format!("shift_expand:{k}:{r}"),
            ShiftedProduct { k, r } => format!("shifted_product:{k}:{r}"),
            ShiftedProductCoeff { k, r } => format!("shifted_product_coeff:{k}:{r}"),
            ProductCoeffVariant { k } => format!("product_coeff_variant:{k}"),
            ShiftExpandVariant { k, r } => format!("shift_expand_variant:{k}:{r}"),
            ShiftedProductVariant { k, r } => format!("shifted_product_variant:{k}:{r}"),
            ShiftedProductCoeffVariant { k, r } => {
                format!("shifted_product_coeff_variant:{k}:{r}")
            }
        }
    }

    fn k(&self) -> usize {
        use Identity::*;
        match *self {
            DoubleSum | RiccatiC | RiccatiB | QuadRec => 0,
            Product { k } | ProductCoeff { k } | ProductCoeffVariant { k } => k,
            ShiftExpand { k, .. }
            | ShiftedProduct { k, .. }
            | ShiftedProductCoeff { k, .. }
            | ShiftExpandVariant { k, .. }
            | ShiftedProductVariant { k, .. }
            | ShiftedProductCoeffVariant { k, .. } => k,
        }
    }

    pub fn is_variant(&self) -> bool {
        use Identity::*;
        matches!(
            self,
            ProductCoeffVariant { .. }
                | ShiftExpandVariant { .. }
                | ShiftedProductVariant { .. }
                | ShiftedProductCoeffVariant { .. }
        )
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Identity::*;
        let bad = || Error::UnknownTag(s.to_string());
        let mut parts = s.split(':');
        let name = parts.next().ok_or_else(bad)?;
        let args: Vec<i64> = parts
            .map(|p| p.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let k = |args: &[i64]| -> Result<usize> {
            match args.first() {
                Some(&k) if k >= 1 => Ok(k as usize),
                _ => Err(bad()),
            }
        };
        let kr = |args: &[i64]| -> Result<(usize, i64)> {
            if args.len() != 2 {
                return Err(bad());
            }
            Ok((k(args)?, args[1]))
        };
        let none = |args: &[i64], id: Identity| if args.is_empty() { Ok(id) } else { Err(bad()) };
        let one = |args: &[i64]| if args.len() == 1 { k(args) } else { Err(bad()) };
        match name {
            "double_sum" => none(&args, DoubleSum),
            "riccati_c" => none(&args, RiccatiC),
            "riccati_b" => none(&args, RiccatiB),
            "quad_rec" => none(&args, QuadRec),
            "product" => Ok(Product { k: one(&args)? }),
            "product_coeff" => Ok(ProductCoeff { k: one(&args)? }),
            "product_coeff_variant" => Ok(ProductCoeffVariant { k: one(&args)? }),
            "shift_expand" => kr(&args).map(|(k, r)| ShiftExpand { k, r }),
            "shift_expand_variant" => kr(&args).map(|(k, r)| ShiftExpandVariant { k, r }),
            "shifted_product" => kr(&args).map(|(k, r)| ShiftedProduct { k, r }),
            "shifted_product_variant" => kr(&args).map(|(k, r)| ShiftedProductVariant { k, r }),
            "shifted_product_coeff" => kr(&args).map(|(k, r)| ShiftedProductCoeff { k, r }),
            "shifted_product_coeff_variant" => {
                kr(&args).map(|(k, r)| ShiftedProductCoeffVariant { k, r })
            }
            _ => Err(bad()),
        }
    }
}

/// Every identity that must hold, for `1 <= k <= max_k` and `|r| <= max_r`.
pub fn registered_identities(max_k: usize, max_r: i64) -> Vec<Identity> {
    use Identity::*;
    let mut out = vec![DoubleSum, RiccatiC, RiccatiB, QuadRec];
    for k in 1..=max_k {
        out.push(Product { k });
        out.push(ProductCoeff { k });
    }
    for k in 1..=max_k {
        for r in -max_r..=max_r {
            out.push(ShiftExpand { k, r });
            out.push(ShiftedProduct { k, r });
            out.push(ShiftedProductCoeff { k, r });
        }
    }
    out
}

/// The failing variant forms, one representative per kind.
pub fn variant_identities() -> Vec<Identity> {
    use Identity::*;
    vec![
        ProductCoeffVariant { k: 1 },
        ShiftExpandVariant { k: 2, r: 0 },
        ShiftedProductVariant { k: 1, r: 1 },
        ShiftedProductCoeffVariant { k: 1, r: 1 },
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct DefectWitness {
    pub part: String,
    pub index: usize,
    pub value: Rational,
}

impl fmt::Display for DefectWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: coefficient {} is {}", self.part, self.index, self.value)
    }
}

/// Labelled defect series; the identity holds iff every part vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct Defect {
    pub parts: Vec<(String, PowerSeries)>,
}

impl Defect {
    fn single(name: &str, s: PowerSeries) -> Self {
        Defect {
            parts: vec![(name.to_string(), s)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|(_, s)| s.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<DefectWitness> {
        self.parts.iter().find_map(|(name, s)| {
            s.first_nonzero().map(|(index, value)| DefectWitness {
                part: name.clone(),
                index,
                value,
            })
        })
    }
}

struct Coeffs(Vec<Rational>);

impl Coeffs {
    fn at(&self, i: i64) -> Rational {
        if i < 0 {
            return Rational::zero();
        }
        self.0.get(i as usize).cloned().unwrap_or_else(Rational::zero)
    }
}

fn sum_dk_shifted(f: &PowerSeries, c: &[Rational], k: usize, r: i64, step: usize) -> PowerSeries {
    let mut acc = PowerSeries::zero(f.order());
    let mut i = 0;
    while i <= k {
        if !c[i].is_zero() {
            acc = acc.add(&apply_dk(f, k + 1 - i, r).shift(i).scale(&c[i]));
        }
        i += step;
    }
    acc
}

fn from_fn(n: usize, f: impl Fn(i64) -> Rational) -> PowerSeries {
    PowerSeries::new((0..=n as i64).map(f).collect())
}

/// `beta_j = binom(r + j - 1, j)`, the coefficients of `(1 - x)^(-r)`.
fn beta(r: i64, j: usize) -> Rational {
    binom(r + j as i64 - 1, j as i64)
}

/// Left minus right side of the shifted product rule
/// `C D_k[r] C = sum_i c_i x^i (D_{k+1-i}[r] - beta_{k+1-i}) C - beta_k x C`.
pub fn shifted_product(k: usize, r: i64, n: usize) -> PowerSeries {
    let cs = series(SeriesKind::C, n);
    let c = bernoulli_coeffs(n.max(k + 1));
    let lhs = cs.mul(&apply_dk(&cs, k, r));
    let mut rhs = sum_dk_shifted(&cs, &c, k, r, 1);
    for i in 0..=k {
        let w = &c[i] * beta(r, k + 1 - i);
        rhs = rhs.sub(&cs.shift(i).scale(&w));
    }
    rhs = rhs.sub(&cs.shift(1).scale(&beta(r, k)));
    lhs.sub(&rhs)
}

/// Computes the defect of `id` modulo `x^(n+1)`.
pub fn verify_identity(id: Identity, n: usize) -> Defect {
    use Identity::*;
    let cv = bernoulli_coeffs(n.max(id.k()) + 2);
    let c = Coeffs(cv.clone());
    let cs = series(SeriesKind::C, n);
    let bs = series(SeriesKind::B, n);
    let b = Coeffs(bs.coeffs().to_vec());
    match id {
        DoubleSum => Defect::single(
            "c_n",
            from_fn(n, |m| {
                if m == 0 {
                    return Rational::zero();
                }
                let nn = m as u32;
                let mut s = Rational::zero();
                for mm in 1..=m {
                    for i in 1..=mm {
                        let pow = Rational::from_integer(BigInt::from(i).pow(nn));
                        s += sign(i) * binom(mm, i) * pow / q(mm + 1);
                    }
                }
                c.at(m) - s / Rational::from_integer(factorial(m as usize))
            }),
        ),
        RiccatiC => {
            let one_minus_x = PowerSeries::one(n).sub(&PowerSeries::monomial(n, 1, q(1)));
            Defect::single(
                "C",
                cs.mul(&cs).add(&cs.euler()).sub(&one_minus_x.mul(&cs)),
            )
        }
        RiccatiB => {
            let rhs = bs.euler().scale(&q(-1)).add(&bs).add(&PowerSeries::monomial(n, 2, qf(1, 4)));
            Defect::single("B", bs.mul(&bs).sub(&rhs))
        }
        QuadRec => Defect::single(
            "c",
            from_fn(n, |idx| {
                if idx % 2 != 0 || idx < 4 {
                    return Rational::zero();
                }
                let m = idx / 2;
                let s: Rational = (1..m).map(|i| c.at(2 * i) * c.at(2 * m - 2 * i)).sum();
                q(2 * m + 1) * c.at(2 * m) + s
            }),
        ),
        Product { k } => {
            let lb = bs.mul(&apply_dk(&bs, k, 0));
            let rb = sum_dk_shifted(&bs, &cv, k, 0, 2);
            let lc = cs.mul(&apply_dk(&cs, k, 0));
            let rc = sum_dk_shifted(&cs, &cv, k, 0, 1);
            Defect {
                parts: vec![("B".into(), lb.sub(&rb)), ("C".into(), lc.sub(&rc))],
            }
        }
        ProductCoeff { k } => {
            let k = k as i64;
            let cpart = from_fn(n, |m| {
                let l: Rational = (0..=m).map(|i| binom(i - 1, k) * c.at(i) * c.at(m - i)).sum();
                let r: Rational = (0..=k.min(m))
                    .map(|i| sign(i) * binom(m - i - 1, k + 1 - i) * c.at(i) * c.at(m - i))
                    .sum();
                l + r
            });
            let bpart = from_fn(n, |m| {
                let l: Rational = (0..=m).map(|i| binom(i - 1, k) * b.at(i) * b.at(m - i)).sum();
                let r: Rational = (0..=k / 2)
                    .map(|i| binom(m - 2 * i - 1, k + 1 - 2 * i) * c.at(2 * i) * b.at(m - 2 * i))
                    .sum();
                l + r
            });
            Defect {
                parts: vec![("C".into(), cpart), ("B".into(), bpart)],
            }
        }
        ShiftExpand { k, r } | ShiftExpandVariant { k, r } => {
            let weight = |j: usize| match id {
                ShiftExpand { .. } => beta(r, j),
                _ => binom(r + 1 - j as i64, j as i64),
            };
            let on = |f: &PowerSeries| {
                let mut rhs = PowerSeries::zero(n);
                for j in 0..=k {
                    rhs = rhs.add(&apply_dk(f, k - j, 0).scale(&weight(j)));
                }
                apply_dk(f, k, r).sub(&rhs)
            };
            Defect {
                parts: vec![
                    ("on C".into(), on(&cs)),
                    ("on 1/(1-x)".into(), on(&PowerSeries::geometric(n))),
                ],
            }
        }
        ShiftedProduct { k, r } => Defect::single("C", shifted_product(k, r, n)),
        ShiftedProductCoeff { k, r } => {
            let (k, kk) = (k as i64, k);
            Defect::single(
                "C",
                from_fn(n, |m| {
                    let l: Rational =
                        (0..=m).map(|i| binom(i - 1 - r, k) * c.at(i) * c.at(m - i)).sum();
                    let top = k.min(m);
                    let s1: Rational = (0..=top)
                        .map(|i| sign(i) * binom(m - i - 1 - r, k + 1 - i) * c.at(i) * c.at(m - i))
                        .sum();
                    let s2: Rational = (0..=top)
                        .map(|i| beta(r, kk + 1 - i as usize) * c.at(i) * c.at(m - i))
                        .sum();
                    let tail = beta(r, kk) * c.at(m - 1);
                    l + s1 + sign(k) * (s2 + tail)
                }),
            )
        }
        ProductCoeffVariant { k } => {
            let k = k as i64;
            let lhs = |m: i64| -> Rational {
                (0..=m).map(|i| binom(i - 1, k) * c.at(i) * c.at(m - i)).sum()
            };
            let even = from_fn(n, |m| {
                let r: Rational = (0..=k / 2)
                    .map(|i| binom(m - 2 * i - 1, k + 1 - 2 * i) * c.at(2 * i) * c.at(m - 2 * i))
                    .sum();
                lhs(m) + r
            });
            let full = from_fn(n, |m| {
                let r: Rational = (0..=k.min(m))
                    .map(|i| binom(m - i - 1, k + 1 - i) * c.at(i) * c.at(m - i))
                    .sum();
                lhs(m) + r
            });
            Defect {
                parts: vec![("even sum".into(), even), ("full sum".into(), full)],
            }
        }
        ShiftedProductVariant { k, r } => {
            let lhs = cs.mul(&apply_dk(&cs, k, r));
            let rhs = sum_dk_shifted(&cs, &cv, k, r, 1);
            Defect {
                parts: vec![
                    ("with -xC".into(), lhs.sub(&rhs.sub(&cs.shift(1)))),
                    ("without -xC".into(), lhs.sub(&rhs)),
                ],
            }
        }
        ShiftedProductCoeffVariant { k, r } => {
            let k = k as i64;
            Defect::single(
                "C",
                from_fn(n, |m| {
                    let l: Rational =
                        (0..=m).map(|i| binom(i - 1 - r, k) * c.at(i) * c.at(m - i)).sum();
                    let s: Rational = (0..=k.min(m))
                        .map(|i| binom(m - i - 1 - r, k + 1 - i) * c.at(i) * c.at(m - i))
                        .sum();
                    l + s + c.at(m - 1)
                }),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for id in registered_identities(3, 2).into_iter().chain(variant_identities()) {
            assert_eq!(id.tag().parse::<Identity>().unwrap(), id);
        }
        assert!("nosuch".parse::<Identity>().is_err());
        assert!("product".parse::<Identity>().is_err());
        assert!("product:0".parse::<Identity>().is_err());
        assert!("shift_expand:1".parse::<Identity>().is_err());
    }

    #[test]
    fn riccati_c_at_order_zero() {
        assert!(verify_identity(Identity::RiccatiC, 0).is_zero());
    }

    #[test]
    fn first_product_rule() {
        // B D_1 B = D_2 B
        let b = series(SeriesKind::B, 20);
        assert_eq!(b.mul(&apply_dk(&b, 1, 0)), apply_dk(&b, 2, 0));
        assert!(verify_identity(Identity::Product { k: 1 }, 20).is_zero());
    }
}
