use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{CertifyError, Config};

pub const SCHEMA: &str = "tricert-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub description: String,
    pub status: Status,
    pub result: String,
    pub witness: Value,
    /// Wall time, shown in text output only so that JSON stays reproducible.
    #[serde(skip)]
    pub millis: Option<u128>,
}

/// A step of the argument taken from the literature rather than computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub step: String,
    pub statement: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema: String,
    pub config: Config,
    pub status: Status,
    pub checks: Vec<Check>,
    pub assumed: Vec<Assumption>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = CertifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(CertifyError::Format(s.to_string())),
        }
    }
}

impl CertificateReport {
    pub fn new(config: Config) -> Self {
        CertificateReport {
            schema: SCHEMA.to_string(),
            config,
            status: Status::Pass,
            checks: Vec::new(),
            assumed: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.status = if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, CertifyError> {
        serde_json::from_str(s).map_err(|e| CertifyError::Input(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} (seed {})", self.schema, self.config.seed).unwrap();
        for c in &self.checks {
            let time = c.millis.map(|m| format!(" [{m} ms]")).unwrap_or_default();
            writeln!(out, "[{}] {}: {}{}", c.status.label(), c.check, c.result, time).unwrap();
            writeln!(out, "       {}", c.description).unwrap();
        }
        for a in &self.assumed {
            writeln!(out, "[{}] {}: {}", a.status, a.step, a.statement).unwrap();
        }
        let n = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        writeln!(
            out,
            "overall: {} ({} pass, {} fail, {} skip)",
            self.status.label(),
            n(Status::Pass),
            n(Status::Fail),
            n(Status::Skip)
        )
        .unwrap();
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}
