//! Monomial artinian algebras `Q[x_1..x_n] / (monomials)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{add_entry, parse_rational, Rational, SparseVec};

/// Variables, monomial relations and an optional degree cap `m^(d+1) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinSpec {
    pub vars: Vec<String>,
    /// Exponent vectors of monomials set to zero.
    #[serde(default)]
    pub relations: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
}

/// Local algebra with a monomial basis of its maximal ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct ArtinAlgebra {
    spec: ArtinSpec,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    table: Vec<Vec<Option<usize>>>,
    exponent: usize,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

impl ArtinAlgebra {
    pub fn new(spec: ArtinSpec) -> Result<Self> {
        let n = spec.vars.len();
        if spec.relations.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("relation length differs from variable count".into()));
        }
        if spec.relations.iter().any(|r| degree(r) == 0) {
            return Err(Error::Parse("the unit cannot be a relation".into()));
        }
        // each variable needs a pure power among the relations, or a degree cap
        let mut bound = 0u32;
        for v in 0..n {
            let pure = spec
                .relations
                .iter()
                .filter(|r| r.iter().enumerate().all(|(k, e)| k == v || *e == 0))
                .map(|r| r[v])
                .min();
            match (pure, spec.max_degree) {
                (Some(p), _) => bound += p - 1,
                (None, Some(d)) => bound += d,
                (None, None) => {
                    return Err(Error::NotNilpotent(format!(
                        "no power of {} vanishes",
                        spec.vars[v]
                    )))
                }
            }
        }
        let cap = spec.max_degree.map_or(bound, |d| d.min(bound));
        let allowed = |m: &[u32]| {
            degree(m) <= cap && !spec.relations.iter().any(|r| divides(r, m))
        };
        let mut found: BTreeSet<(u32, Vec<u32>)> = BTreeSet::new();
        let mut frontier: Vec<Vec<u32>> = vec![vec![0; n]];
        while let Some(m) = frontier.pop() {
            for v in 0..n {
                let mut x = m.clone();
                x[v] += 1;
                if allowed(&x) && found.insert((degree(&x), x.clone())) {
                    frontier.push(x);
                }
            }
        }
        // degree first, then reverse exponent order so that t < s*t < t^2 reads naturally
        let mut basis: Vec<Vec<u32>> = found.into_iter().map(|(_, m)| m).collect();
        basis.sort_by(|a, b| degree(a).cmp(&degree(b)).then(b.cmp(a)));
        let index: HashMap<Vec<u32>, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let table = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let p: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        index.get(&p).copied()
                    })
                    .collect()
            })
            .collect();
        let exponent = basis.iter().map(|m| degree(m) as usize).max().unwrap_or(0);
        Ok(ArtinAlgebra {
            spec,
            basis,
            index,
            table,
            exponent,
        })
    }

    /// `Q[t] / t^(n+1)`.
    pub fn truncated(var: &str, n: u32) -> Self {
        ArtinAlgebra::new(ArtinSpec {
            vars: vec![var.to_string()],
            relations: vec![vec![n + 1]],
            max_degree: None,
        })
        .expect("valid truncated polynomial ring")
    }

    /// `Q[x_1..x_k] / m^(d+1)`.
    pub fn polynomial_truncated(vars: &[&str], d: u32) -> Self {
        ArtinAlgebra::new(ArtinSpec {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            relations: vec![],
            max_degree: Some(d),
        })
        .expect("valid truncated polynomial ring")
    }

    pub fn spec(&self) -> &ArtinSpec {
        &self.spec
    }

    /// Dimension of the maximal ideal.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Largest `e` with `m^e != 0`.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        degree(&self.basis[i]) as usize
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    /// Product of two elements of the maximal ideal.
    pub fn mul_elems(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, s) in x {
            for (b, t) in y {
                if let Some(c) = self.table[*a][*b] {
                    add_entry(&mut out, c, &(s * t));
                }
            }
        }
        out
    }

    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.basis[i]
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(v, e)| {
                if *e == 1 {
                    self.spec.vars[v].clone()
                } else {
                    format!("{}^{}", self.spec.vars[v], e)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Parses `"c*t^2"`, `"-s*t"`, `"1/2·t"` into a coefficient and a basis
    /// index. A monomial that vanishes in the algebra yields `None`.
    pub fn parse_term(&self, s: &str) -> Result<(Rational, Option<usize>)> {
        let mut coeff = Rational::from_integer(1.into());
        let mut exps = vec![0u32; self.spec.vars.len()];
        let mut text = s.trim().to_string();
        if let Some(rest) = text.strip_prefix('-') {
            coeff = -coeff;
            text = rest.trim().to_string();
        }
        for (n, tok) in text.split(['*', '·']).map(str::trim).enumerate() {
            if tok.is_empty() {
                return Err(Error::Parse(format!("empty factor in {s:?}")));
            }
            if n == 0 && tok.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= parse_rational(tok)?;
                continue;
            }
            let (name, e) = match tok.split_once('^') {
                Some((v, e)) => (
                    v.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?,
                ),
                None => (tok, 1),
            };
            let v = self
                .spec
                .vars
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?} in {s:?}")))?;
            exps[v] += e;
        }
        if degree(&exps) == 0 {
            return Err(Error::Parse(format!(
                "{s:?} has no variable; coefficients must lie in the maximal ideal"
            )));
        }
        let vanishes = self.spec.relations.iter().any(|r| divides(r, &exps))
            || self.spec.max_degree.is_some_and(|d| degree(&exps) > d);
        if vanishes {
            return Ok((coeff, None));
        }
        Ok((coeff, self.index_of(&exps)))
    }
}

impl fmt::Display for ArtinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.spec.vars.join(","))?;
        if !self.spec.relations.is_empty() {
            let rels: Vec<String> = self
                .spec
                .relations
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, e)| **e > 0)
                        .map(|(v, e)| if *e == 1 { self.spec.vars[v].clone() } else { format!("{}^{}", self.spec.vars[v], e) })
                        .collect::<Vec<_>>()
                        .join("*")
                })
                .collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        if let Some(d) = self.spec.max_degree {
            write!(f, " mod m^{}", d + 1)?;
        }
        Ok(())
    }
}
