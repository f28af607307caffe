//! `lie check`, `complex`, `random-pairs` and the `examples` family.

use std::path::PathBuf;

use anyhow::bail;
use clap::Args;
use lieatom::format::parse_atom;
use lieatom::jb::{
    build_jb, coalgebra_report, deformation_ring, graded_report, quasi_iso_check,
    random_nilpotent_pair, tower_map, JbComplex,
};
use lieatom::lie::examples::{identity_line_atom, line_atom, trivial_atom};
use lieatom::lie::{adjoint_filtration, coordinate_inclusion, gl_atom, GlVariant, LieAtom};
use lieatom::linalg::{binom, fmt_rational, q, QMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::RunReport;
use crate::util::read;
use crate::Common;

#[derive(Args)]
pub struct LieCheckArgs {
    file: PathBuf,
    /// Depth of the adjoint filtration.
    #[arg(long, default_value_t = 3)]
    m: usize,
}

pub fn lie_check(a: &LieCheckArgs, rep: &mut RunReport) -> anyhow::Result<()> {
    let atom = parse_atom(&read(&a.file)?)?;
    rep.data("dims", serde_json::json!({"g": atom.g.dim(), "h": atom.h.dim()}));
    rep.data("is_pair", atom.is_pair());
    let s = atom.check();
    rep.check("structure", s.ok(), || s.failures.first().map(|f| f.to_string()).unwrap_or_default());
    match &atom.hull {
        Some(hull) => {
            let f = adjoint_filtration(hull, a.m).report(hull);
            rep.check("filtration.increasing", f.increasing, String::new);
            rep.check("filtration.module", f.module_failures.is_empty(), || {
                format!("levels {:?}", f.module_failures)
            });
            rep.check("filtration.pairing", f.pairing_failures.is_empty(), || {
                format!("pairs {:?}", f.pairing_failures)
            });
            rep.data("filtration", &f);
        }
        None => rep.skip("filtration", "atom has no hull"),
    }
    Ok(())
}

#[derive(Args, Default)]
pub struct Analyses {
    /// Composite differentials vanish.
    #[arg(long)]
    d2: bool,
    /// Degree-0 cohomology and its coalgebra structure.
    #[arg(long)]
    h0: bool,
    /// Deformation ring table and ring axioms.
    #[arg(long)]
    ring: bool,
    /// Graded dimensions against the unobstructed counts.
    #[arg(long)]
    graded: bool,
    /// The map from order m to order m-1.
    #[arg(long)]
    tower: bool,
}

impl Analyses {
    fn all() -> Self {
        Analyses {
            d2: true,
            h0: true,
            ring: true,
            graded: true,
            tower: true,
        }
    }

    fn or_all(&self) -> Self {
        if self.d2 || self.h0 || self.ring || self.graded || self.tower {
            Analyses { ..*self }
        } else {
            Analyses::all()
        }
    }
}

impl Clone for Analyses {
    fn clone(&self) -> Self {
        Analyses { ..*self }
    }
}

#[derive(Args)]
pub struct ComplexArgs {
    file: PathBuf,
    /// Truncation order.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Runs everything when no analysis flag is given.
    #[command(flatten)]
    analyses: Analyses,
}

/// Runs the requested analyses with check names prefixed by `prefix`.
fn analyse(atom: &LieAtom, m: usize, which: &Analyses, prefix: &str, rep: &mut RunReport) -> Option<JbComplex> {
    let cx = match build_jb(atom, m) {
        Ok(cx) => cx,
        Err(e) => {
            rep.check(format!("{prefix}build"), false, || e.to_string());
            return None;
        }
    };
    rep.data(&format!("{prefix}term_dims"), cx.term_dims());
    if which.d2 {
        let d2 = cx.check_d2();
        rep.check(format!("{prefix}d2"), d2.ok, || {
            d2.failures
                .first()
                .map(|f| format!("degree {}: d∘d({}) has {} on {}", f.degree, f.source, f.value, f.target))
                .unwrap_or_default()
        });
        rep.check(format!("{prefix}d2.filtration"), cx.preserves_f(), String::new);
        rep.check(format!("{prefix}d2.graded_koszul"), cx.graded_is_koszul(), String::new);
    }
    let h0 = cx.h0();
    if which.h0 {
        rep.data(&format!("{prefix}h0_dim"), h0.dim);
        let c = coalgebra_report(&cx, &h0);
        rep.check(format!("{prefix}h0.coassociative"), c.coassociative, String::new);
        rep.check(format!("{prefix}h0.cocommutative"), c.cocommutative, String::new);
        rep.check(format!("{prefix}h0.descends"), c.descends, String::new);
    }
    if which.ring || which.graded {
        match deformation_ring(&cx) {
            Ok(r) => {
                if which.ring {
                    rep.check(format!("{prefix}ring.associative"), r.is_associative(), String::new);
                    rep.check(format!("{prefix}ring.commutative"), r.is_commutative(), String::new);
                    rep.data(
                        &format!("{prefix}ring"),
                        serde_json::json!({
                            "dim": r.dim(),
                            "labels": r.labels,
                            "table": r.sparse_table(),
                            "nilpotency_index": r.nilpotency_index(),
                        }),
                    );
                }
                if which.graded {
                    let g = graded_report(atom, &r);
                    if atom.is_pair() {
                        rep.check(format!("{prefix}graded.sym_counts"), g.bound_ok, || {
                            format!("graded {:?} against {:?}", g.graded_dims, g.unobstructed)
                        });
                    } else {
                        rep.skip(format!("{prefix}graded.sym_counts"), "the two-term comparison applies to Lie pairs");
                    }
                    rep.data(&format!("{prefix}graded"), &g);
                }
            }
            Err(e) => rep.check(format!("{prefix}ring"), false, || e.to_string()),
        }
    }
    if which.tower {
        if m < 2 {
            rep.skip(format!("{prefix}tower"), "needs m >= 2");
        } else {
            match build_jb(atom, m - 1).and_then(|lo| tower_map(&lo, &cx)) {
                Ok(t) => {
                    rep.check(format!("{prefix}tower.surjective"), t.surjective, String::new);
                    rep.check(format!("{prefix}tower.multiplicative"), t.multiplicative, String::new);
                    rep.check(format!("{prefix}tower.kills_top_power"), t.kills_top_power, String::new);
                }
                Err(e) => rep.check(format!("{prefix}tower"), false, || e.to_string()),
            }
        }
    }
    Some(cx)
}

pub fn complex(a: &ComplexArgs, rep: &mut RunReport) -> anyhow::Result<()> {
    if a.m == 0 {
        bail!("--m must be at least 1");
    }
    let atom = parse_atom(&read(&a.file)?)?;
    rep.data("m", a.m);
    analyse(&atom, a.m, &a.analyses.or_all(), "", rep);
    Ok(())
}

#[derive(Args)]
pub struct RandomPairsArgs {
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Largest dimension of the nilpotent algebra.
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Orders cycle through `2..=max_m`.
    #[arg(long, default_value_t = 4)]
    max_m: usize,
}

pub fn random_pairs(a: &RandomPairsArgs, common: &Common, rep: &mut RunReport) -> anyhow::Result<()> {
    if a.max_m < 2 {
        bail!("--max-m must be at least 2");
    }
    rep.seed = Some(common.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let d2_only = Analyses {
        d2: true,
        ..Analyses::default()
    };
    let mut shapes = Vec::new();
    for k in 0..a.count {
        let atom = random_nilpotent_pair(&mut rng, a.max_dim);
        let m = 2 + k % (a.max_m - 1);
        shapes.push(serde_json::json!({"g": atom.g.dim(), "h": atom.h.dim(), "m": m}));
        analyse(&atom, m, &d2_only, &format!("pair{k:02}."), rep);
    }
    rep.data("pairs", shapes);
    Ok(())
}

#[derive(Args)]
pub struct GrassmannianArgs {
    /// Subspace and ambient dimensions.
    #[arg(long, num_args = 2, value_names = ["SUB", "AMB"])]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    m: usize,
}

fn count(x: lieatom::linalg::Rational) -> usize {
    x.to_integer().try_into().unwrap_or(usize::MAX)
}

pub fn grassmannian(a: &GrassmannianArgs, rep: &mut RunReport) -> anyhow::Result<()> {
    let (s, n) = (a.dims[0], a.dims[1]);
    if s == 0 || s >= n {
        bail!("--dims needs 1 <= SUB < AMB, got {s} {n}");
    }
    if a.m == 0 {
        bail!("--m must be at least 1");
    }
    let atom = gl_atom(&coordinate_inclusion(s, n), GlVariant::Sub)?;
    let d = s * (n - s);
    let sym: Vec<usize> = (1..=a.m).map(|r| count(binom((d + r) as i64 - 1, r as i64))).collect();
    rep.data("tangent_dim", d);
    rep.data("sym_counts", &sym);
    let Some(cx) = analyse(&atom, a.m, &Analyses::all(), "", rep) else {
        return Ok(());
    };
    let h0 = cx.h0().dim;
    let want: usize = sym.iter().sum();
    rep.check("h0.dim_formula", h0 == want, || format!("dim H0 = {h0}, expected {want}"));
    if let Ok(r) = deformation_ring(&cx) {
        let g = r.graded_dims();
        rep.check("graded.binomials", g == sym, || format!("graded {g:?} against {sym:?}"));
    }
    Ok(())
}

#[derive(Args)]
pub struct QuasiIsoArgs {
    #[arg(long, default_value_t = 3)]
    max_m: usize,
}

/// `(g, h, i) ⊕ (Q, Q, id) -> (g, h, i)` by projection.
fn stabilized(atom: &LieAtom) -> (LieAtom, QMatrix, QMatrix) {
    let extra = identity_line_atom();
    let hull = atom.hull.as_ref().expect("pairs carry a hull");
    let xh = &extra.hull.as_ref().expect("pairs carry a hull").algebra;
    let big = LieAtom::pair(atom.g.direct_sum(&extra.g), hull.algebra.direct_sum(xh), atom.i.direct_sum(&extra.i))
        .expect("direct sums of pairs are pairs");
    let proj = |n: usize| {
        let mut p = QMatrix::zeros(n, n + 1);
        for k in 0..n {
            p.set(k, k, q(1));
        }
        p
    };
    (big, proj(atom.g.dim()), proj(atom.h.dim()))
}

pub fn quasi_iso(a: &QuasiIsoArgs, rep: &mut RunReport) -> anyhow::Result<()> {
    let grass = gl_atom(&coordinate_inclusion(1, 2), GlVariant::Sub)?;
    let cols = grass.i.columns();
    let hl = grass.hull()?.algebra.clone();
    let (img, incl) = hl.subalgebra(&cols, (0..cols.len()).map(|k| format!("c{k}")).collect())?;
    let image_pair = LieAtom::pair(img, hl, incl)?;
    let mut cases: Vec<(&str, LieAtom, LieAtom, QMatrix, QMatrix)> = vec![
        ("grassmannian_image", grass, image_pair, QMatrix::identity(cols.len()), QMatrix::identity(4)),
        ("identity_to_trivial", identity_line_atom(), trivial_atom(), QMatrix::zeros(0, 1), QMatrix::zeros(0, 1)),
    ];
    let (big, fg, fh) = stabilized(&line_atom());
    cases.push(("stabilized_line", big, line_atom(), fg, fh));
    let mut dims = serde_json::Map::new();
    for (name, src, dst, fg, fh) in &cases {
        for m in 1..=a.max_m {
            let key = format!("{name}:m={m}");
            match quasi_iso_check(src, dst, fg, fh, m) {
                Ok(r) => {
                    rep.check(key.clone(), r.ok(), || format!("{r:?}"));
                    dims.insert(key, serde_json::json!([r.h0_dims.0, r.h0_dims.1]));
                }
                Err(e) => rep.check(key, false, || e.to_string()),
            }
        }
    }
    rep.data("h0_dims", dims);
    Ok(())
}

#[derive(Args)]
pub struct RingsArgs {
    #[arg(long, default_value_t = 3)]
    m: usize,
}

/// The line pair gives `Q[t]/t^(m+1)` with `(b^i)* (b^j)* = binom(i+j, i) (b^(i+j))*`;
/// the quasi-trivial pair gives `Q`.
pub fn rings(a: &RingsArgs, rep: &mut RunReport) -> anyhow::Result<()> {
    if a.m == 0 {
        bail!("--m must be at least 1");
    }
    let all = Analyses::all();
    if let Some(cx) = analyse(&line_atom(), a.m, &all, "line.", rep) {
        let r = deformation_ring(&cx)?;
        let n = r.ideal_dim();
        rep.check("line.ring.dim", n == a.m, || format!("ideal dimension {n}"));
        // basis (b^k)* at index k-1, ordered by power
        let mut bad = None;
        for i in 1..=n {
            for j in 1..=n {
                let got = r.mul_basis(i - 1, j - 1).clone();
                let mut want = lieatom::linalg::SparseVec::new();
                if i + j <= n {
                    want.insert(i + j - 1, binom((i + j) as i64, i as i64));
                }
                if got != want && bad.is_none() {
                    bad = Some(format!("(b^{i})*·(b^{j})* = {:?}", got.iter().map(|(k, c)| (k, fmt_rational(c))).collect::<Vec<_>>()));
                }
            }
        }
        rep.check("line.ring.binomial_table", bad.is_none(), || bad.clone().unwrap_or_default());
        rep.check("line.ring.nilpotency", r.nilpotency_index() == a.m + 1, || {
            format!("index {}", r.nilpotency_index())
        });
    }
    if let Some(cx) = analyse(&identity_line_atom(), a.m, &all, "quasi_trivial.", rep) {
        let d = deformation_ring(&cx)?.dim();
        rep.check("quasi_trivial.ring.is_q", d == 1, || format!("dimension {d}"));
    }
    Ok(())
}
