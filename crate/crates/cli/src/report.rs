use std::fmt::Write as _;
use std::process::ExitCode;

use deltacat::{Error, LawCheck};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Malformed,
}

impl Status {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Status::Pass => ExitCode::SUCCESS,
            Status::Fail => ExitCode::from(1),
            Status::Malformed => ExitCode::from(2),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub law: String,
    pub domain: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Check {
    fn from_law(check: LawCheck, all_witnesses: bool) -> Self {
        let keep = if all_witnesses { usize::MAX } else { 1 };
        Check { law: check.law, domain: check.domain, witnesses: check.failures.iter().take(keep).map(Error::to_string).collect() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub status: Status,
    pub checks: Vec<Check>,
    pub artifacts_written: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<serde_json::Value>,
}

impl Report {
    pub fn new(checks: Vec<LawCheck>, all_witnesses: bool) -> Self {
        let mut r = Report { status: Status::Pass, checks: Vec::new(), artifacts_written: Vec::new(), output: None };
        r.extend(checks, all_witnesses);
        r
    }

    pub fn extend(&mut self, checks: Vec<LawCheck>, all_witnesses: bool) {
        for c in checks {
            if !c.passed() {
                self.status = Status::Fail;
            }
            self.checks.push(Check::from_law(c, all_witnesses));
        }
    }

    /// A report for an error that stopped the command.
    pub fn from_error(err: &Error) -> Self {
        let status = if err.is_malformed() { Status::Malformed } else { Status::Fail };
        Report {
            status,
            checks: vec![Check { law: "input".into(), domain: 1, witnesses: vec![err.to_string()] }],
            artifacts_written: Vec::new(),
            output: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Malformed => "malformed",
        };
        let _ = writeln!(s, "status: {status}");
        for c in &self.checks {
            let mark = if c.witnesses.is_empty() { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  [{mark}] {} ({} checked)", c.law, c.domain);
            for w in &c.witnesses {
                let _ = writeln!(s, "         witness: {w}");
            }
        }
        if let Some(out) = &self.output {
            match out {
                serde_json::Value::String(v) => {
                    let _ = writeln!(s, "output: {v}");
                }
                other => {
                    let _ = writeln!(s, "output:\n{}", serde_json::to_string_pretty(other).expect("json value"));
                }
            }
        }
        for a in &self.artifacts_written {
            let _ = writeln!(s, "wrote {a}");
        }
        s
    }
}
