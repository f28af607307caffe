//! Free nilpotent Lie algebras in the Lyndon basis.
//!
//! Basis elements are Lyndon words `w` with the standard bracketing
//! `P(w) = [P(u), P(v)]`, where `v` is the longest proper Lyndon suffix.
//! Elements are computed inside the truncated tensor algebra and pulled back
//! by triangularity: `P(w) = w + (lexicographically larger words)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{add_entry, q, QMatrix, Rational, SparseVec};

pub type Word = Vec<u8>;

/// Noncommutative polynomial, word -> coefficient.
pub type Poly = BTreeMap<Word, Rational>;

#[derive(Clone, Debug)]
pub struct FreeNilpotentLie {
    gens: Vec<String>,
    class: usize,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    expansion: Vec<Poly>,
    split: Vec<Option<(usize, usize)>>,
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of length `1..=max_len` over `k` letters (Duval's algorithm).
pub fn lyndon_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(l) => *l += 1,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Dimension of the degree-`n` part of the free Lie algebra on `k`
/// generators: `(1/n) sum_{d | n} mu(d) k^(n/d)`.
pub fn witt_dimension(k: usize, n: usize) -> usize {
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(d) as i128 * (k as i128).pow((n / d) as u32);
        }
    }
    (total / n as i128) as usize
}

fn mobius(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn poly_mul(a: &Poly, b: &Poly, max_len: usize) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let mut w = u.clone();
            w.extend_from_slice(v);
            poly_add(&mut out, w, &(x * y));
        }
    }
    out
}

fn poly_add(p: &mut Poly, w: Word, x: &Rational) {
    if x.is_zero() {
        return;
    }
    match p.entry(w) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x.clone());
        }
    }
}

/// `[a, b] = ab - ba` in the tensor algebra truncated above `max_len`.
pub fn poly_commutator(a: &Poly, b: &Poly, max_len: usize) -> Poly {
    let mut out = poly_mul(a, b, max_len);
    for (w, x) in poly_mul(b, a, max_len) {
        poly_add(&mut out, w, &-x);
    }
    out
}

impl FreeNilpotentLie {
    pub fn new(gens: &[&str], class: usize) -> Self {
        assert!(class >= 1, "nilpotency class must be at least 1");
        assert!(gens.len() < 256);
        let basis = lyndon_words(gens.len(), class);
        let index: HashMap<Word, usize> =
            basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut expansion: Vec<Poly> = Vec::with_capacity(basis.len());
        let mut split = Vec::with_capacity(basis.len());
        for w in &basis {
            if w.len() == 1 {
                expansion.push([(w.clone(), q(1))].into_iter().collect());
                split.push(None);
                continue;
            }
            let cut = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("standard factorization");
            let (iu, iv) = (index[&w[..cut]], index[&w[cut..]]);
            expansion.push(poly_commutator(&expansion[iu], &expansion[iv], class));
            split.push(Some((iu, iv)));
        }
        FreeNilpotentLie {
            gens: gens.iter().map(|s| s.to_string()).collect(),
            class,
            basis,
            index,
            expansion,
            split,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].len()
    }

    pub fn generator(&self, g: usize) -> SparseVec {
        [(self.index[&vec![g as u8]], q(1))].into_iter().collect()
    }

    /// Bracketed form of a basis element, e.g. `[a,[a,b]]`.
    pub fn label(&self, i: usize) -> String {
        match self.split[i] {
            None => self.gens[self.basis[i][0] as usize].clone(),
            Some((u, v)) => format!("[{},{}]", self.label(u), self.label(v)),
        }
    }

    pub fn fmt(&self, x: &SparseVec) -> String {
        crate::linalg::fmt_sparse(x, |k| self.label(k))
    }

    pub fn expand(&self, x: &SparseVec) -> Poly {
        let mut out = Poly::new();
        for (i, c) in x {
            for (w, y) in &self.expansion[*i] {
                poly_add(&mut out, w.clone(), &(c * y));
            }
        }
        out
    }

    /// Coordinates of a Lie polynomial in the Lyndon basis.
    pub fn decompose(&self, p: &Poly) -> Result<SparseVec> {
        let mut rest = p.clone();
        let mut out = SparseVec::new();
        while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let i = *self.index.get(&w).ok_or_else(|| {
                Error::NotLieValued(format!("leading word {w:?} is not a basis word"))
            })?;
            for (v, y) in &self.expansion[i] {
                poly_add(&mut rest, v.clone(), &(-(&c * y)));
            }
            add_entry(&mut out, i, &c);
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let p = poly_commutator(&self.expand(x), &self.expand(y), self.class);
        self.decompose(&p).expect("commutators of Lie elements are Lie")
    }

    /// `[[a, b], ..., b]` with `m` copies of `b`.
    pub fn ad_pow(&self, a: &SparseVec, b: &SparseVec, m: usize) -> SparseVec {
        let mut x = a.clone();
        for _ in 0..m {
            if x.is_empty() {
                break;
            }
            x = self.bracket(&x, b);
        }
        x
    }

    pub fn to_lie_algebra(&self) -> LieAlgebra {
        let mut g = LieAlgebra::with_labels((0..self.dim()).map(|i| self.label(i)).collect());
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if self.degree(i) + self.degree(j) > self.class {
                    continue;
                }
                let v = self.bracket(&super::algebra::unit(i), &super::algebra::unit(j));
                g.set_bracket(i, j, v).expect("indices in range");
            }
        }
        g
    }

    /// Evaluation homomorphism sending generator `k` to `images[k]`, where
    /// the matrices generate an algebra in which brackets of length above
    /// the class vanish.
    pub fn evaluate(&self, x: &SparseVec, images: &[QMatrix]) -> QMatrix {
        let n = images[0].nrows();
        let mut memo: Vec<Option<QMatrix>> = vec![None; self.dim()];
        let mut out = QMatrix::zeros(n, n);
        for (i, c) in x {
            out = out.add(&self.eval_basis(*i, images, &mut memo).scale(c));
        }
        out
    }

    fn eval_basis(&self, i: usize, images: &[QMatrix], memo: &mut Vec<Option<QMatrix>>) -> QMatrix {
        if let Some(m) = &memo[i] {
            return m.clone();
        }
        let m = match self.split[i] {
            None => images[self.basis[i][0] as usize].clone(),
            Some((u, v)) => {
                let a = self.eval_basis(u, images, memo);
                let b = self.eval_basis(v, images, memo);
                a.mul(&b).sub(&b.mul(&a))
            }
        };
        memo[i] = Some(m.clone());
        m
    }
}
