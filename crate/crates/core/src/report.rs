//! Machine-readable results of computations and checks.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::linalg::ModuleInvariant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A known mismatch against a displayed formula, reported but not failed.
    Discrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Discrepancy => "discrepancy",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub note: String,
}

impl Check {
    pub fn compare<T: PartialEq + fmt::Display>(name: impl Into<String>, expected: &T, computed: &T) -> Check {
        Check {
            name: name.into(),
            status: if expected == computed { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            computed: computed.to_string(),
            note: String::new(),
        }
    }

    pub fn condition(name: impl Into<String>, ok: bool, note: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: "true".into(),
            computed: ok.to_string(),
            note: note.into(),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Check {
        self.name = name.into();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = note.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub p: u64,
    pub precision: u32,
    pub window: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInfo {
    pub spec: String,
    pub vector_rank: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub n: i64,
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

impl Row {
    pub fn new(n: i64, inv: &ModuleInvariant) -> Row {
        Row { n, free_rank: inv.free_rank, torsion: inv.torsion.clone() }
    }

    pub fn invariant(&self) -> ModuleInvariant {
        ModuleInvariant::new(self.free_rank, self.torsion.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub config: Config,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeInfo>,
    pub table: Vec<Row>,
    pub checks: Vec<Check>,
}

impl ReportDocument {
    pub fn new(config: Config) -> ReportDocument {
        ReportDocument { config, lattice: None, table: Vec::new(), checks: Vec::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "p = {}, precision = {}, window = [{}, {}]", c.p, c.precision, c.window.0, c.window.1);
        if let Some(l) = &self.lattice {
            let _ = writeln!(out, "lattice {}  vector rank {}", l.spec, l.vector_rank);
        }
        if !self.table.is_empty() {
            let _ = writeln!(out, "{:>4}  {:>4}  {:<16}  {}", "n", "free", "torsion", "module");
            for r in &self.table {
                let t: Vec<String> = r.torsion.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{:>4}  {:>4}  {:<16}  {}", r.n, r.free_rank, format!("[{}]", t.join(",")), r.invariant());
            }
        }
        for ch in &self.checks {
            let _ = write!(out, "[{}] {}: expected {}, computed {}", ch.status, ch.name, ch.expected, ch.computed);
            if !ch.note.is_empty() {
                let _ = write!(out, " ({})", ch.note);
            }
            out.push('\n');
        }
        if !self.checks.is_empty() {
            let _ = writeln!(
                out,
                "{} checks: {} pass, {} fail, {} discrepancy",
                self.checks.len(),
                self.count(Status::Pass),
                self.count(Status::Fail),
                self.count(Status::Discrepancy)
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_json_agree() {
        let mut doc = ReportDocument::new(Config { p: 3, precision: 16, window: (-1, 1) });
        doc.table.push(Row::new(0, &ModuleInvariant::new(0, vec![2])));
        doc.checks.push(Check::compare("x", &1, &1));
        let json: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(json["table"][0]["torsion"][0], 2);
        assert!(doc.to_table().contains("[2]"));
        assert!(doc.all_passed());
    }
}
