use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimEntry {
    pub q: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideResult {
    pub side: String,
    pub dims: Vec<DimEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized_at: Option<usize>,
}

impl SideResult {
    pub fn new(side: impl Into<String>, dims: &[usize], stabilized_at: Option<usize>) -> Self {
        let dims = dims.iter().enumerate().map(|(q, &dim)| DimEntry { q, dim }).collect();
        Self { side: side.into(), dims, stabilized_at }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.dims.iter().map(|e| e.dim).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SceneInfo {
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Meta {
    pub wall_time_ms: u128,
    pub threads: usize,
    pub version: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scene: Option<SceneInfo>,
    pub results: Vec<SideResult>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Report {
    pub fn new(command: &str, scene: Option<SceneInfo>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            scene,
            results: Vec::new(),
            checks: Vec::new(),
            verdict: Verdict::Pass,
            counterexample: None,
            error: None,
            meta: None,
        }
    }

    pub fn push_check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        if !passed && self.counterexample.is_none() {
            self.counterexample = detail.clone();
        }
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    /// Compares two sides per `q`, padding the shorter one with zeros.
    pub fn push_match(&mut self, name: &str, a: &[usize], b: &[usize]) {
        let n = a.len().max(b.len());
        let at = |v: &[usize], q: usize| v.get(q).copied().unwrap_or(0);
        let bad = (0..n).find(|&q| at(a, q) != at(b, q));
        let detail = bad.map(|q| format!("q={q}: {} vs {}", at(a, q), at(b, q)));
        self.push_check(name, bad.is_none(), detail);
    }

    pub fn fail_with_error(&mut self, message: String) {
        self.verdict = Verdict::Error;
        self.error = Some(message);
    }

    pub fn finish(&mut self) {
        if self.verdict != Verdict::Error {
            self.verdict = if self.checks.iter().all(|c| c.passed) { Verdict::Pass } else { Verdict::Fail };
        }
    }

    /// Keeps only `q ≤ max_q` in every result.
    pub fn truncate_q(&mut self, max_q: usize) {
        for r in &mut self.results {
            r.dims.retain(|e| e.q <= max_q);
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {:?}", self.command, self.verdict);
        for r in &self.results {
            let dims: Vec<String> = r.dims.iter().map(|e| e.dim.to_string()).collect();
            let stab = r.stabilized_at.map(|n| format!("  (stable at {n})")).unwrap_or_default();
            let _ = writeln!(out, "  {:<12} ({}){stab}", r.side, dims.join(", "));
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(out, "  FAILED {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error: {e}");
        }
        out
    }
}
