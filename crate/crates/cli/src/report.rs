use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    Symmetries,
    Commutators,
    Adjoint,
    Optimal,
    Invariants,
    Galilean,
    Grid,
    ResidualScaling,
}

/// `Erratum` marks a disagreement with the reference results that the
/// computation itself supports; `Fail` marks a broken computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Erratum,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Erratum => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Erratum => "ERRATUM",
            Status::Fail => "FAIL",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }

    pub fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, Status::from_bool(ok), detail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: ReportKind,
    pub payload: serde_json::Value,
    pub verdicts: Vec<Verdict>,
    /// Human-readable body for text output.
    #[serde(default)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(kind: ReportKind, payload: serde_json::Value) -> Self {
        Self {
            kind,
            payload,
            verdicts: Vec::new(),
            text: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        self.verdicts
            .iter()
            .map(|v| v.status)
            .max()
            .unwrap_or(Status::Pass)
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.text {
            let _ = writeln!(out, "{l}");
        }
        if !self.text.is_empty() && !self.verdicts.is_empty() {
            out.push('\n');
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "{:<7} {}: {}", v.status.label(), v.name, v.detail);
        }
        let _ = writeln!(out, "status: {}", self.status().label());
        out
    }
}
