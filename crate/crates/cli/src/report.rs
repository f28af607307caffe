//! Run reports: one entry per check, sorted by name, plus free-form data.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckEntry>,
    pub data: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport {
            command,
            seed: None,
            checks: Vec::new(),
            data: Map::new(),
            timing_ms: None,
        }
    }

    /// Records a check; a failure without a witness gets a generic one.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        let (status, witness) = if ok {
            (Status::Pass, None)
        } else {
            let w = witness();
            (Status::Fail, Some(if w.is_empty() { "check returned false".to_string() } else { w }))
        };
        self.checks.push(CheckEntry {
            name: name.into(),
            status,
            witness,
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.checks.push(CheckEntry {
            name: name.into(),
            status: Status::Skipped,
            witness: Some(why.into()),
        });
    }

    pub fn data(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn render_json(mut self) -> String {
        self.sort();
        serde_json::to_string_pretty(&self).expect("serializable")
    }

    pub fn render_plain(mut self) -> String {
        self.sort();
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if let Some(s) = self.seed {
            writeln!(out, "seed: {s}").unwrap();
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            match &c.witness {
                Some(w) => writeln!(out, "{tag} {}  [{w}]", c.name).unwrap(),
                None => writeln!(out, "{tag} {}", c.name).unwrap(),
            }
        }
        for (k, v) in &self.data {
            writeln!(out, "{k}: {}", plain_value(v)).unwrap();
        }
        if let Some(t) = self.timing_ms {
            writeln!(out, "timing_ms: {t}").unwrap();
        }
        let (pass, fail) = (
            self.checks.iter().filter(|c| c.status == Status::Pass).count(),
            self.checks.iter().filter(|c| c.status == Status::Fail).count(),
        );
        write!(out, "summary: {pass} passed, {fail} failed").unwrap();
        out
    }
}

fn plain_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
