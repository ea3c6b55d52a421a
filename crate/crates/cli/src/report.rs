//! Run reports: a command echo, per-check outcomes, an optional result and
//! timing.

use std::fmt::{self, Display};

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Counterexamples, each replayable through the library operation.
    pub violations: Vec<Value>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ErrorPayload {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorPayload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    /// Human-readable result lines.
    #[serde(skip)]
    pub text: Vec<String>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            status: Status::Pass,
            checks: Vec::new(),
            result: None,
            error: None,
            timing_ms: None,
            text: Vec::new(),
        }
    }

    /// Records a law check from a library report.
    pub fn check<V: Serialize + Display>(&mut self, name: &str, violations: &[V]) {
        let status = if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        self.checks.push(Check {
            name: name.to_string(),
            status,
            violations: violations
                .iter()
                .map(|v| serde_json::to_value(v).expect("violations serialize"))
                .collect(),
            lines: violations.iter().map(ToString::to_string).collect(),
        });
    }

    pub fn result(&mut self, value: impl Serialize, text: Vec<String>) {
        self.result = Some(serde_json::to_value(value).expect("results serialize"));
        self.text = text;
    }

    pub fn finish(&mut self) {
        if self.error.is_some() {
            self.status = Status::Error;
        } else if self.checks.iter().any(|c| c.status == Status::Fail) {
            self.status = Status::Fail;
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&format!("{}: {}\n", c.name, c.status));
            for line in &c.lines {
                out.push_str(&format!("  {line}\n"));
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {}\n", e.message));
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
