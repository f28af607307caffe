//! Versioned JSON input files for atoms and deformation data.
//!
//! Rationals are strings `"p/q"` or `"p"`; matrices are nested arrays of
//! them; sparse vectors are `[[index, "p/q"], ...]`. Every parse error names
//! the JSON path of the offending value.

use serde::{Deserialize, Serialize};

use crate::artin::{ArtinAlgebra, ArtinSpec};
use crate::deform::{DeformationDatum, DgLieAlgebra, DgLiePair};
use crate::error::{Error, Result};
use crate::lie::{Hull, LieAlgebra, LieAtom, LieModule};
use crate::linalg::{add_entry, fmt_rational, parse_rational, QMatrix, Rational, SparseVec};

pub const FORMAT_VERSION: u32 = 1;

pub type Entries = Vec<(usize, String)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i32>>,
    /// `[i, j, entries]` with `i <= j`; omitted pairs bracket to zero.
    #[serde(default)]
    pub brackets: Vec<(usize, usize, Entries)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// `[a, v, entries]` for `<e_a, f_v>`.
    #[serde(default)]
    pub action: Vec<(usize, usize, Entries)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HullFile {
    pub lie_algebra: LieAlgebraFile,
    pub embed_h: Vec<Vec<String>>,
    pub embed_g: Vec<Vec<String>>,
}

/// An atom given either by a module with `atom_i`, by a Lie algebra
/// `h_lie_algebra` receiving `g` (a Lie pair), or by a hull. Next to a hull,
/// `module` may carry labels only; an action or `atom_i` given there must
/// agree with the one the hull induces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lie_algebra: LieAlgebraFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_lie_algebra: Option<LieAlgebraFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom_i: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull: Option<HullFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgAlgebraFile {
    pub lie_algebra: LieAlgebraFile,
    /// Dense; omitted means zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Vec<Vec<String>>>,
}

/// `h` and `i` default to `g` and the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgPairFile {
    pub g: DgAlgebraFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<DgAlgebraFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<Vec<Vec<String>>>,
}

/// `phi` and `psi` list `[basis index, "c·monomial"]`, meaning
/// `c · e_index ⊗ monomial`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub base: ArtinSpec,
    pub dg_pair: DgPairFile,
    #[serde(default)]
    pub phi: Entries,
    #[serde(default)]
    pub psi: Entries,
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{path}: {m}")),
        other => Error::Parse(format!("{path}: {other}")),
    }
}

fn rational(path: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| at(path, e))
}

fn entries(path: &str, es: &Entries, dim: usize) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (n, (k, c)) in es.iter().enumerate() {
        if *k >= dim {
            return Err(Error::Parse(format!("{path}[{n}][0]: index {k} out of range for dimension {dim}")));
        }
        add_entry(&mut v, *k, &rational(&format!("{path}[{n}][1]"), c)?);
    }
    Ok(v)
}

fn matrix(path: &str, rows: &[Vec<String>], nrows: usize, ncols: usize) -> Result<QMatrix> {
    if rows.len() != nrows {
        return Err(Error::Parse(format!("{path}: expected {nrows} rows, found {}", rows.len())));
    }
    let mut m = QMatrix::zeros(nrows, ncols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Parse(format!("{path}[{r}]: expected {ncols} entries, found {}", row.len())));
        }
        for (c, s) in row.iter().enumerate() {
            m.set(r, c, rational(&format!("{path}[{r}][{c}]"), s)?);
        }
    }
    Ok(m)
}

fn labels(path: &str, given: &Option<Vec<String>>, dim: usize, prefix: &str) -> Result<Vec<String>> {
    match given {
        Some(l) if l.len() != dim => Err(Error::Parse(format!("{path}: expected {dim} labels, found {}", l.len()))),
        Some(l) => Ok(l.clone()),
        None => Ok((0..dim).map(|i| format!("{prefix}{i}")).collect()),
    }
}

fn structure(path: &str, ok: bool, rep: impl std::fmt::Display) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidStructure(format!("{path}: {rep}")))
    }
}

impl LieAlgebraFile {
    pub fn build(&self, path: &str, prefix: &str) -> Result<LieAlgebra> {
        let names = labels(&format!("{path}.labels"), &self.labels, self.dim, prefix)?;
        let mut g = match &self.degrees {
            Some(d) if d.len() != self.dim => {
                return Err(Error::Parse(format!("{path}.degrees: expected {} degrees, found {}", self.dim, d.len())))
            }
            Some(d) => LieAlgebra::graded(names, d.clone()),
            None => LieAlgebra::with_labels(names),
        };
        for (n, (i, j, es)) in self.brackets.iter().enumerate() {
            let p = format!("{path}.brackets[{n}]");
            if i > j {
                return Err(Error::Parse(format!("{p}: store brackets with i <= j, found [{i}, {j}]")));
            }
            let v = entries(&format!("{p}[2]"), es, self.dim)?;
            g.set_bracket(*i, *j, v).map_err(|e| at(&p, e))?;
        }
        let rep = g.check();
        structure(path, rep.ok(), first_failure(&rep))?;
        Ok(g)
    }

    pub fn from_algebra(g: &LieAlgebra) -> Self {
        LieAlgebraFile {
            dim: g.dim(),
            labels: Some(g.labels().to_vec()),
            degrees: g.is_graded().then(|| g.degrees().to_vec()),
            brackets: g.brackets().map(|(i, j, v)| (i, j, to_entries(v))).collect(),
        }
    }
}

fn first_failure(rep: &crate::lie::StructureReport) -> String {
    rep.failures.first().map(|f| f.to_string()).unwrap_or_default()
}

pub fn to_entries(v: &SparseVec) -> Entries {
    v.iter().map(|(k, c)| (*k, fmt_rational(c))).collect()
}

pub fn to_rows(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_dense().iter().map(|r| r.iter().map(fmt_rational).collect()).collect()
}

impl AtomFile {
    pub fn build(&self) -> Result<LieAtom> {
        if self.format != FORMAT_VERSION {
            return Err(Error::Parse(format!("format: unsupported version {}", self.format)));
        }
        let g = self.lie_algebra.build("lie_algebra", "e")?;
        let atom = match (&self.h_lie_algebra, &self.hull) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse("h_lie_algebra and hull are mutually exclusive".into()))
            }
            (Some(hf), None) => {
                let h = hf.build("h_lie_algebra", "f")?;
                let rows = self.atom_i.as_ref().ok_or_else(|| Error::Parse("atom_i: missing".into()))?;
                let i = matrix("atom_i", rows, h.dim(), g.dim())?;
                LieAtom::pair(g, h, i)?
            }
            (None, Some(hf)) => {
                let algebra = hf.lie_algebra.build("hull.lie_algebra", "x")?;
                let n = algebra.dim();
                let h_dim = hf.embed_h.first().map_or(0, Vec::len);
                let embed_h = matrix("hull.embed_h", &hf.embed_h, n, h_dim)?;
                let embed_g = matrix("hull.embed_g", &hf.embed_g, n, g.dim())?;
                let h_labels = match &self.module {
                    Some(m) => labels("module.labels", &m.labels, h_dim, "f")?,
                    None => (0..h_dim).map(|i| format!("f{i}")).collect(),
                };
                let atom = LieAtom::from_hull(g, Hull { algebra, embed_h, embed_g }, h_labels)?;
                if let Some(m) = self.module.as_ref().filter(|m| !m.action.is_empty()) {
                    let given = self.module_from(m, &atom.g)?;
                    if given != atom.h {
                        return Err(Error::InvalidStructure("module: action differs from the one induced by the hull".into()));
                    }
                }
                if let Some(rows) = &self.atom_i {
                    if matrix("atom_i", rows, atom.h.dim(), atom.g.dim())? != atom.i {
                        return Err(Error::InvalidStructure("atom_i: differs from the map induced by the hull".into()));
                    }
                }
                atom
            }
            (None, None) => {
                let mf = self.module.as_ref().ok_or_else(|| Error::Parse("module: missing".into()))?;
                let h = self.module_from(mf, &g)?;
                let rows = self.atom_i.as_ref().ok_or_else(|| Error::Parse("atom_i: missing".into()))?;
                let i = matrix("atom_i", rows, h.dim(), g.dim())?;
                LieAtom { g, h, i, hull: None }
            }
        };
        let rep = atom.check();
        structure("atom", rep.ok(), first_failure(&rep))?;
        Ok(atom)
    }

    fn module_from(&self, mf: &ModuleFile, g: &LieAlgebra) -> Result<LieModule> {
        let mut h = LieModule::with_labels(labels("module.labels", &mf.labels, mf.dim, "f")?);
        for (n, (a, v, es)) in mf.action.iter().enumerate() {
            let p = format!("module.action[{n}]");
            if *a >= g.dim() || *v >= mf.dim {
                return Err(Error::Parse(format!("{p}: index out of range")));
            }
            h.set_action(*a, *v, entries(&format!("{p}[2]"), es, mf.dim)?);
        }
        Ok(h)
    }

    /// The atom written as a Lie pair, hull-based or module-based file.
    pub fn from_atom(atom: &LieAtom) -> Self {
        let module = ModuleFile {
            dim: atom.h.dim(),
            labels: Some(atom.h.labels().to_vec()),
            action: atom.h.entries().map(|(a, v, w)| (a, v, to_entries(w))).collect(),
        };
        let mut file = AtomFile {
            format: FORMAT_VERSION,
            name: None,
            lie_algebra: LieAlgebraFile::from_algebra(&atom.g),
            h_lie_algebra: None,
            module: Some(module),
            atom_i: Some(to_rows(&atom.i)),
            hull: None,
        };
        if atom.is_pair() {
            let hull = atom.hull.as_ref().expect("pairs carry a hull");
            file.h_lie_algebra = Some(LieAlgebraFile::from_algebra(&hull.algebra));
            file.module = None;
        } else if let Some(hull) = &atom.hull {
            file.hull = Some(HullFile {
                lie_algebra: LieAlgebraFile::from_algebra(&hull.algebra),
                embed_h: to_rows(&hull.embed_h),
                embed_g: to_rows(&hull.embed_g),
            });
        }
        file
    }
}

impl DgAlgebraFile {
    fn build(&self, path: &str) -> Result<DgLieAlgebra> {
        let alg = self.lie_algebra.build(&format!("{path}.lie_algebra"), "e")?;
        let n = alg.dim();
        let d = match &self.differential {
            Some(rows) => matrix(&format!("{path}.differential"), rows, n, n)?,
            None => QMatrix::zeros(n, n),
        };
        let dg = DgLieAlgebra::new(alg, d).map_err(|e| at(path, e))?;
        let rep = dg.check();
        structure(path, rep.ok(), first_failure(&rep))?;
        Ok(dg)
    }
}

impl DgPairFile {
    pub fn build(&self) -> Result<DgLiePair> {
        let g = self.g.build("dg_pair.g")?;
        let pair = match (&self.h, &self.i) {
            (None, None) => DgLiePair::identity(g),
            (Some(hf), Some(rows)) => {
                let h = hf.build("dg_pair.h")?;
                let i = matrix("dg_pair.i", rows, h.dim(), g.dim())?;
                DgLiePair::new(g, h, i)?
            }
            _ => return Err(Error::Parse("dg_pair: give both h and i, or neither".into())),
        };
        let rep = pair.check();
        structure("dg_pair", rep.ok(), first_failure(&rep))?;
        Ok(pair)
    }
}

fn tensor_entries(path: &str, es: &Entries, base: &ArtinAlgebra, dim: usize) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (n, (k, term)) in es.iter().enumerate() {
        if *k >= dim {
            return Err(Error::Parse(format!("{path}[{n}][0]: index {k} out of range for dimension {dim}")));
        }
        let (c, mono) = base.parse_term(term).map_err(|e| at(&format!("{path}[{n}][1]"), e))?;
        if let Some(mu) = mono {
            add_entry(&mut v, k * base.dim() + mu, &c);
        }
    }
    Ok(v)
}

impl DeformationFile {
    pub fn build(&self) -> Result<DeformationDatum> {
        if self.format != FORMAT_VERSION {
            return Err(Error::Parse(format!("format: unsupported version {}", self.format)));
        }
        let base = ArtinAlgebra::new(self.base.clone()).map_err(|e| at("base", e))?;
        let pair = self.dg_pair.build()?;
        let phi = tensor_entries("phi", &self.phi, &base, pair.g.dim())?;
        let psi = tensor_entries("psi", &self.psi, &base, pair.h.dim())?;
        DeformationDatum::new(pair, base, phi, psi)
    }
}

pub fn parse_atom(json: &str) -> Result<LieAtom> {
    let file: AtomFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}

pub fn parse_deformation(json: &str) -> Result<DeformationDatum> {
    let file: DeformationFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::examples::{filiform_atom, heisenberg_pair, line_atom};

    #[test]
    fn atoms_round_trip() {
        for atom in [line_atom(), heisenberg_pair(), filiform_atom()] {
            let json = serde_json::to_string(&AtomFile::from_atom(&atom)).unwrap();
            assert_eq!(parse_atom(&json).unwrap(), atom);
        }
    }

    #[test]
    fn bad_rational_names_its_path() {
        let json = r#"{"format": 1, "lie_algebra": {"dim": 2, "brackets": [[0, 1, [[1, "1/0"]]]]},
                       "module": {"dim": 0}, "atom_i": []}"#;
        let err = parse_atom(json).unwrap_err().to_string();
        assert!(err.contains("lie_algebra.brackets[0][2][0][1]"), "{err}");
    }

    #[test]
    fn jacobi_failure_names_the_triple() {
        let json = r#"{"format": 1, "lie_algebra": {"dim": 3, "brackets": [[0, 1, [[1, "1"]]], [1, 2, [[0, "1"]]]]},
                       "module": {"dim": 0}, "atom_i": []}"#;
        let err = parse_atom(json).unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(_)), "{err}");
    }

    #[test]
    fn obstruction_file() {
        let json = r#"{"format": 1, "base": {"vars": ["t"], "relations": [[3]]},
            "dg_pair": {"g": {"lie_algebra": {"dim": 2, "labels": ["v", "w"], "degrees": [1, 2],
                                              "brackets": [[0, 0, [[1, "1"]]]]}}},
            "phi": [[0, "t"]], "psi": []}"#;
        let d = parse_deformation(json).unwrap();
        let want: SparseVec = [(3, crate::linalg::qf(1, 2))].into_iter().collect();
        assert_eq!(crate::deform::mc_defect(&d), want);
    }
}
