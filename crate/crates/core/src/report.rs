use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::identity::{CheckResult, Mode};

pub const TOOL_VERSION: &str = concat!("loopkit ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The outcome of one check before it is wrapped in a [`Record`].
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub passed: bool,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

impl Outcome {
    pub fn pass() -> Outcome {
        Outcome { passed: true, ..Default::default() }
    }

    pub fn from_bool(passed: bool) -> Outcome {
        Outcome { passed, ..Default::default() }
    }

    pub fn fail(witness: impl Into<String>) -> Outcome {
        Outcome { passed: false, witness: Some(witness.into()), detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Outcome {
        self.detail = Some(detail.into());
        self
    }

    /// Fails with the witness when one is present.
    pub fn from_witness<W: std::fmt::Debug>(w: Option<W>) -> Outcome {
        match w {
            None => Outcome::pass(),
            Some(w) => Outcome::fail(format!("{w:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub id: String,
    pub description: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Record {
    pub fn run(id: &str, description: &str, mode: Mode, f: impl FnOnce() -> Outcome) -> Record {
        let start = Instant::now();
        let o = f();
        Record {
            id: id.to_string(),
            description: description.to_string(),
            mode: mode.name().to_string(),
            seed: mode.seed(),
            passed: o.passed,
            witness: o.witness,
            detail: o.detail,
            timing_ms: Some(start.elapsed().as_millis() as u64),
        }
    }

    pub fn from_check(id: &str, description: &str, r: &CheckResult, timing_ms: u64) -> Record {
        Record {
            id: id.to_string(),
            description: description.to_string(),
            mode: r.mode.name().to_string(),
            seed: r.mode.seed(),
            passed: r.passed,
            witness: r.witness.as_ref().map(|w| format!("{w:?}")),
            detail: r.failed_part.as_ref().map(|p| format!("{p} fails")),
            timing_ms: Some(timing_ms),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub input: String,
    pub records: Vec<Record>,
    pub status: Status,
}

impl Report {
    pub fn new(input: impl Into<String>) -> Report {
        Report { tool_version: TOOL_VERSION.to_string(), input: input.into(), records: Vec::new(), status: Status::Pass }
    }

    pub fn push(&mut self, r: Record) {
        if !r.passed {
            self.status = Status::Fail;
        }
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        for r in other.records {
            self.push(r);
        }
    }

    /// Appends `other` with `prefix` and a dot in front of every id.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut r in other.records {
            r.id = format!("{prefix}.{}", r.id);
            self.push(r);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self, timings: bool) -> String {
        let mut r = self.clone();
        if !timings {
            for rec in &mut r.records {
                rec.timing_ms = None;
            }
        }
        serde_json::to_string_pretty(&r).expect("report serialises")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} on {}", self.tool_version, self.input);
        for r in &self.records {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            let _ = write!(s, "[{mark}] {:<40} {}", r.id, r.description);
            if let Some(seed) = r.seed {
                let _ = write!(s, " (sampled, seed {seed})");
            }
            if let Some(w) = &r.witness {
                let _ = write!(s, "\n       witness: {w}");
            }
            if let Some(d) = &r.detail {
                let _ = write!(s, "\n       {d}");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}
