//! `bernoulli` and `lie verify`.

use anyhow::bail;
use clap::{Args, ValueEnum};
use lieatom::bernoulli::{bernoulli_coeffs, variant_identities, registered_identities, verify_identity, Identity};
use lieatom::lie::{alternating_at_zero, verify_alternating_expansion, verify_bernoulli_bracket_sum};
use lieatom::linalg::fmt_rational;

use crate::report::RunReport;

#[derive(Args)]
pub struct BernoulliArgs {
    /// Truncation order of every power series.
    #[arg(long, default_value_t = 30)]
    order: usize,
    /// `all` or one identity tag such as `product:3` or `shift_expand:2:-1`.
    #[arg(long, default_value = "all")]
    check: String,
    /// Largest operator index `k` in the `all` suite.
    #[arg(long, default_value_t = 8)]
    max_k: usize,
    /// Shifts `r` range over `-max_r..=max_r` in the `all` suite.
    #[arg(long, default_value_t = 3)]
    max_r: i64,
    /// Also evaluate the variant forms, which are expected to fail.
    #[arg(long)]
    variants: bool,
}

pub fn bernoulli(a: &BernoulliArgs, rep: &mut RunReport) -> anyhow::Result<()> {
    let mut ids: Vec<Identity> = if a.check == "all" {
        registered_identities(a.max_k, a.max_r)
    } else {
        vec![a.check.parse()?]
    };
    if a.variants {
        ids.extend(variant_identities());
    }
    for id in ids {
        let d = verify_identity(id, a.order);
        rep.check(id.tag(), d.is_zero(), || d.first_nonzero().map(|w| w.to_string()).unwrap_or_default());
    }
    let c: Vec<String> = bernoulli_coeffs(a.order.min(12)).iter().map(fmt_rational).collect();
    rep.data("order", a.order);
    rep.data("c", c);
    Ok(())
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LieKind {
    /// `[a1, a2_@b^m]^alt` against its binomial closed form.
    Alternating,
    /// The Bernoulli-weighted bracket sum behind the lowest `d∘d`.
    BernoulliSum,
}

#[derive(Args)]
pub struct LieVerifyArgs {
    #[arg(long, value_enum)]
    kind: LieKind,
    /// Checks `1 <= m <= max_m`.
    #[arg(long, default_value_t = 6)]
    max_m: usize,
}

pub fn lie_verify(a: &LieVerifyArgs, rep: &mut RunReport) -> anyhow::Result<()> {
    if a.max_m == 0 {
        bail!("--max-m must be at least 1");
    }
    match a.kind {
        LieKind::Alternating => {
            for m in 1..=a.max_m {
                let id = verify_alternating_expansion(m);
                rep.check(format!("alternating:m={m:02}"), id.holds(), || {
                    format!("defect {}", id.ambient.fmt(&id.defect))
                });
            }
            let (id, twice) = alternating_at_zero();
            let f = &id.ambient;
            rep.data(
                "m0_discrepancy",
                serde_json::json!({
                    "lhs": f.fmt(&id.lhs),
                    "closed_form": f.fmt(&id.rhs),
                    "twice_bracket": f.fmt(&twice),
                    "holds": id.holds(),
                }),
            );
        }
        LieKind::BernoulliSum => {
            for m in 1..=a.max_m {
                let id = verify_bernoulli_bracket_sum(m);
                rep.check(format!("bernoulli_sum:m={m:02}"), id.holds(), || {
                    format!("defect {}", id.ambient.fmt(&id.defect))
                });
            }
            if a.max_m >= 2 {
                let id = verify_bernoulli_bracket_sum(2);
                let f = &id.ambient;
                rep.data(
                    "m2_witness",
                    serde_json::json!({
                        "big_sum": f.fmt(&id.big_sum),
                        "c1_term": f.fmt(&id.correction),
                    }),
                );
            }
        }
    }
    Ok(())
}
