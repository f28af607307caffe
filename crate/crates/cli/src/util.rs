use std::path::Path;

use anyhow::Context;
use lieatom::linalg::{fmt_rational, SparseVec};

pub fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// `[[label, "p/q"], ...]` for report data.
pub fn labelled(v: &SparseVec, label: impl Fn(usize) -> String) -> Vec<(String, String)> {
    v.iter().map(|(k, c)| (label(*k), fmt_rational(c))).collect()
}

/// The first nonzero entry as `c·label`, or an empty string.
pub fn first_entry(v: &SparseVec, label: impl Fn(usize) -> String) -> String {
    v.iter()
        .next()
        .map(|(k, c)| format!("{}·{}", fmt_rational(c), label(*k)))
        .unwrap_or_default()
}
