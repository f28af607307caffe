use std::fmt;

use serde::Serialize;

/// One failed structure check, naming the offending basis indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureFailure {
    pub check: String,
    pub indices: Vec<usize>,
    pub defect: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StructureReport {
    pub failures: Vec<StructureFailure>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, check: &str, indices: Vec<usize>, defect: String) {
        self.failures.push(StructureFailure {
            check: check.to_string(),
            indices,
            defect,
        });
    }

    pub fn absorb(&mut self, prefix: &str, other: StructureReport) {
        for mut f in other.failures {
            f.check = format!("{prefix}.{}", f.check);
            self.failures.push(f);
        }
    }
}

impl fmt::Display for StructureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.check, self.indices, self.defect)
    }
}
