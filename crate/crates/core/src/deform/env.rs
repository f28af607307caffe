//! Truncated universal enveloping algebra of `L ⊗ m` in PBW normal form.
//!
//! Letters are the basis vectors `x_k ⊗ μ` ordered by (m-degree of `μ`,
//! `k`, `μ`). A word is normal when it is weakly increasing with no repeated
//! odd letter; other words are rewritten with
//! `y x -> (-1)^(|x||y|) x y + [y, x]` and `x x -> ½[x, x]` for odd `x`.
//! Words of total m-degree above the exponent of `m` vanish.

use std::collections::{BTreeMap, HashMap};

use crate::artin::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::lie::{tensor_algebra, unit, LieAlgebra};
use crate::linalg::{q, qf, QMatrix, Rational, SparseVec};

pub type Word = Vec<usize>;

/// A linear combination of normal words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnvElement {
    pub terms: BTreeMap<Word, Rational>,
}

impl EnvElement {
    pub fn zero() -> Self {
        EnvElement::default()
    }

    pub fn one() -> Self {
        EnvElement {
            terms: [(vec![], q(1))].into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(&self) -> Rational {
        self.terms.get(&vec![]).cloned().unwrap_or_else(|| q(0))
    }

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        self.axpy(&q(1), other)
    }

    pub fn sub(&self, other: &EnvElement) -> EnvElement {
        self.axpy(&q(-1), other)
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Rational, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        for (w, x) in &other.terms {
            add_word(&mut out.terms, w.clone(), c * x);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> EnvElement {
        EnvElement::zero().axpy(c, self)
    }

    /// Length of the longest word.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

fn add_word(m: &mut BTreeMap<Word, Rational>, w: Word, x: Rational) {
    if x == q(0) {
        return;
    }
    let e = m.entry(w.clone()).or_insert_with(|| q(0));
    *e += x;
    if *e == q(0) {
        m.remove(&w);
    }
}

/// The algebra `U(L ⊗ m)` modulo words of m-degree above `exponent(m)`.
#[derive(Clone, Debug)]
pub struct EnvAlgebra {
    /// `L ⊗ m` in letter order.
    lie: LieAlgebra,
    /// `perm[j]`: index in `L ⊗ m` (as built by `tensor_algebra`) of letter `j`.
    perm: Vec<usize>,
    inverse: Vec<usize>,
    mdeg: Vec<usize>,
    odd: Vec<bool>,
    exponent: usize,
}

impl EnvAlgebra {
    pub fn new(l: &LieAlgebra, base: &ArtinAlgebra) -> Self {
        let lm = tensor_algebra(l, base);
        let n = base.dim();
        let mut perm: Vec<usize> = (0..lm.dim()).collect();
        perm.sort_by_key(|&idx| (base.degree(idx % n), idx / n, idx % n));
        let mut inverse = vec![0; perm.len()];
        for (j, &idx) in perm.iter().enumerate() {
            inverse[idx] = j;
        }
        let p = QMatrix::from_columns(lm.dim(), &perm.iter().map(|&i| unit(i)).collect::<Vec<_>>());
        let labels = perm.iter().map(|&i| lm.label(i).to_string()).collect();
        let lie = lm.change_basis(&p, labels).expect("permutation");
        let mdeg = perm.iter().map(|&i| base.degree(i % n)).collect();
        let odd = perm.iter().map(|&i| lm.degree(i) % 2 != 0).collect();
        EnvAlgebra {
            lie,
            perm,
            inverse,
            mdeg,
            odd,
            exponent: base.exponent(),
        }
    }

    pub fn letters(&self) -> usize {
        self.perm.len()
    }

    pub fn letter_label(&self, j: usize) -> &str {
        self.lie.label(j)
    }

    /// A Lie element given in the basis of `tensor_algebra(L, base)`.
    pub fn from_lie(&self, x: &SparseVec) -> EnvElement {
        let mut out = EnvElement::zero();
        for (idx, c) in x {
            add_word(&mut out.terms, vec![self.inverse[*idx]], c.clone());
        }
        out
    }

    /// Inverse of [`from_lie`](Self::from_lie); fails on constants or words
    /// of length two or more.
    pub fn to_lie(&self, u: &EnvElement) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (w, c) in &u.terms {
            if w.len() != 1 {
                return Err(Error::NotLieValued(format!(
                    "word of length {} with coefficient {c}",
                    w.len()
                )));
            }
            out.insert(self.perm[w[0]], c.clone());
        }
        Ok(out)
    }

    fn word_mdeg(&self, w: &[usize]) -> usize {
        w.iter().map(|j| self.mdeg[*j]).sum()
    }

    fn normal(&self, w: &[usize], memo: &mut HashMap<Word, Vec<(Word, Rational)>>) -> Vec<(Word, Rational)> {
        if self.word_mdeg(w) > self.exponent {
            return vec![];
        }
        if let Some(r) = memo.get(w) {
            return r.clone();
        }
        let pos = (0..w.len().saturating_sub(1))
            .find(|&i| w[i] > w[i + 1] || (w[i] == w[i + 1] && self.odd[w[i]]));
        let result = match pos {
            None => vec![(w.to_vec(), q(1))],
            Some(i) => {
                let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
                let (y, x) = (w[i], w[i + 1]);
                if x == y {
                    for (k, c) in self.lie.bracket_basis(x, x) {
                        let mut nw = w[..i].to_vec();
                        nw.push(k);
                        nw.extend_from_slice(&w[i + 2..]);
                        for (r, v) in self.normal(&nw, memo) {
                            add_word(&mut acc, r, &c * &v * qf(1, 2));
                        }
                    }
                } else {
                    let mut sw = w.to_vec();
                    sw.swap(i, i + 1);
                    let s = if self.odd[x] && self.odd[y] { q(-1) } else { q(1) };
                    for (r, v) in self.normal(&sw, memo) {
                        add_word(&mut acc, r, &s * v);
                    }
                    for (k, c) in self.lie.bracket_basis(y, x) {
                        let mut nw = w[..i].to_vec();
                        nw.push(k);
                        nw.extend_from_slice(&w[i + 2..]);
                        for (r, v) in self.normal(&nw, memo) {
                            add_word(&mut acc, r, &c * v);
                        }
                    }
                }
                acc.into_iter().collect()
            }
        };
        memo.insert(w.to_vec(), result.clone());
        result
    }

    /// Normal form of an arbitrary combination of words.
    pub fn normalize(&self, terms: &BTreeMap<Word, Rational>) -> EnvElement {
        let mut memo = HashMap::new();
        let mut out = EnvElement::zero();
        for (w, c) in terms {
            for (r, v) in self.normal(w, &mut memo) {
                add_word(&mut out.terms, r, c * v);
            }
        }
        out
    }

    pub fn mul(&self, a: &EnvElement, b: &EnvElement) -> EnvElement {
        let mut raw: BTreeMap<Word, Rational> = BTreeMap::new();
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                let mut w = u.clone();
                w.extend(v);
                if self.word_mdeg(&w) <= self.exponent {
                    add_word(&mut raw, w, x * y);
                }
            }
        }
        self.normalize(&raw)
    }

    pub fn pow(&self, a: &EnvElement, k: usize) -> EnvElement {
        (0..k).fold(EnvElement::one(), |acc, _| self.mul(&acc, a))
    }

    /// `exp(x) = sum_k x^k / k!`, finite since `x` has no constant term.
    pub fn exp(&self, x: &EnvElement) -> Result<EnvElement> {
        if x.constant() != q(0) {
            return Err(Error::BadConstantTerm("exp needs an element of the ideal".into()));
        }
        let mut out = EnvElement::one();
        let mut term = EnvElement::one();
        for k in 1..=self.exponent {
            term = self.mul(&term, x).scale(&qf(1, k as i64));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `log(1 + y) = sum_k (-1)^(k+1) y^k / k`.
    pub fn log(&self, u: &EnvElement) -> Result<EnvElement> {
        if u.constant() != q(1) {
            return Err(Error::BadConstantTerm(format!(
                "log needs constant term 1, got {}",
                u.constant()
            )));
        }
        let y = u.sub(&EnvElement::one());
        let mut out = EnvElement::zero();
        let mut pw = EnvElement::one();
        for k in 1..=self.exponent {
            pw = self.mul(&pw, &y);
            if pw.is_zero() {
                break;
            }
            let c = if k % 2 == 1 { qf(1, k as i64) } else { qf(-1, k as i64) };
            out = out.axpy(&c, &pw);
        }
        Ok(out)
    }

    /// `log(exp(x) exp(y))` as a Lie element.
    pub fn bch(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        let u = self.mul(&self.exp(&self.from_lie(x))?, &self.exp(&self.from_lie(y))?);
        self.to_lie(&self.log(&u)?)
    }

    /// The degree `+1` derivation extending `d` (a map on `tensor_algebra`
    /// coordinates), with sign `(-1)^(degrees to the left)`.
    pub fn derivation(&self, d: &QMatrix, u: &EnvElement) -> EnvElement {
        let mut raw: BTreeMap<Word, Rational> = BTreeMap::new();
        for (w, c) in &u.terms {
            let mut odd_left = false;
            for i in 0..w.len() {
                let s = if odd_left { -c.clone() } else { c.clone() };
                for (idx, v) in d.column(self.perm[w[i]]) {
                    let mut nw = w.clone();
                    nw[i] = self.inverse[idx];
                    add_word(&mut raw, nw, &s * v);
                }
                odd_left ^= self.odd[w[i]];
            }
        }
        self.normalize(&raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::examples::heisenberg;

    fn basis_vec(i: usize) -> SparseVec {
        unit(i)
    }

    #[test]
    fn exp_log_of_zero() {
        let a = ArtinAlgebra::truncated("t", 2);
        let env = EnvAlgebra::new(&heisenberg(), &a);
        assert_eq!(env.exp(&EnvElement::zero()).unwrap(), EnvElement::one());
        assert!(env.log(&EnvElement::one()).unwrap().is_zero());
        assert!(env.log(&EnvElement::zero()).is_err());
    }

    #[test]
    fn heisenberg_bch() {
        // x⊗t at 0, y⊗t at 2, z⊗t^2 at 5
        let a = ArtinAlgebra::truncated("t", 2);
        let env = EnvAlgebra::new(&heisenberg(), &a);
        let b = env.bch(&basis_vec(0), &basis_vec(2)).unwrap();
        let want: SparseVec = [(0, q(1)), (2, q(1)), (5, qf(1, 2))].into_iter().collect();
        assert_eq!(b, want);
    }

    #[test]
    fn commuting_bch_adds() {
        let a = ArtinAlgebra::truncated("t", 3);
        let env = EnvAlgebra::new(&heisenberg(), &a);
        let b = env.bch(&basis_vec(0), &basis_vec(1)).unwrap();
        let want: SparseVec = [(0, q(1)), (1, q(1))].into_iter().collect();
        assert_eq!(b, want);
    }

    #[test]
    fn odd_square_is_half_bracket() {
        let mut alg = LieAlgebra::graded(vec!["v".into(), "w".into()], vec![1, 2]);
        alg.set_bracket(0, 0, [(1, q(1))].into_iter().collect()).unwrap();
        let a = ArtinAlgebra::truncated("t", 2);
        let env = EnvAlgebra::new(&alg, &a);
        let v = env.from_lie(&basis_vec(0));
        let vv = env.mul(&v, &v);
        // v⊗t · v⊗t = ½[v⊗t, v⊗t] = ½ w⊗t^2
        let want = env.from_lie(&[(3, qf(1, 2))].into_iter().collect());
        assert_eq!(vv, want);
    }
}
