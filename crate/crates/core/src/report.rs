//! Check reports shared by the suites, the command line and the bindings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Bumped whenever the JSON layout changes.
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// Rendering of whatever failed to vanish, or a short note.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residue: Option<String>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub version: u32,
    pub checks: Vec<Check>,
}

/// Outcome of one check body.
pub struct Outcome {
    pub pass: bool,
    pub residue: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { pass: true, residue: None }
    }

    pub fn fail(residue: impl Into<String>) -> Self {
        Outcome { pass: false, residue: Some(residue.into()) }
    }

    /// Passes when `ok`; otherwise records `residue`.
    pub fn check(ok: bool, residue: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(residue())
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.residue = Some(note.into());
        self
    }
}

impl Report {
    pub fn new(suite: &str, seed: u64) -> Self {
        Report { suite: suite.to_string(), seed, version: REPORT_VERSION, checks: Vec::new() }
    }

    /// Runs `body`, timing it; an `Err` counts as a failure with the error text.
    pub fn run<E: std::fmt::Display>(&mut self, id: &str, anchor: &str, body: impl FnOnce() -> Result<Outcome, E>) {
        let t0 = Instant::now();
        let out = body();
        let wall_ms = t0.elapsed().as_secs_f64() * 1e3;
        let (status, residue) = match out {
            Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.residue),
            Err(e) => (Status::Fail, Some(format!("error: {e}"))),
        };
        self.checks.push(Check { id: id.to_string(), anchor: anchor.to_string(), status, residue, wall_ms });
    }

    pub fn skip(&mut self, id: &str, anchor: &str, why: &str) {
        self.checks.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: Status::Skip,
            residue: Some(why.to_string()),
            wall_ms: 0.0,
        });
    }

    /// True when no non-skipped check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {}, report v{})", self.suite, self.seed, self.version);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = write!(out, "  [{tag}] {} ({}) {:.1} ms", c.id, c.anchor, c.wall_ms);
            if let Some(r) = &c.residue {
                let _ = write!(out, "\n         {r}");
            }
            out.push('\n');
        }
        let total = self.checks.len();
        let fails = self.failures().count();
        let _ = writeln!(out, "{} of {} checks failed", fails, total);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("demo", 7);
        r.run("a", "anchor", || Ok::<_, String>(Outcome::pass()));
        r.run("b", "anchor", || Err::<Outcome, _>("boom"));
        r.skip("c", "anchor", "not applicable");
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
