//! Plain-text `key = value` run reports.
//!
//! Layout, one entry per line, in insertion order:
//!
//! ```text
//! format = propb-report/1
//! command = <subcommand>
//! <key> = <value>                     (inputs and measured quantities)
//! check.<name>.expected = <text>
//! check.<name>.actual = <text>
//! check.<name>.status = pass|fail
//! summary.checks = <count>
//! summary.failed = <count>
//! summary.status = pass|fail
//! ```
//!
//! Exact dyadic values are written as `numerator/2^exponent`, with a second
//! `<key>.decimal` entry holding the exact decimal expansion. Timing never
//! appears in a report; the CLI prints it to stderr.

use std::fmt;

use crate::dyadic::DyadicValue;

pub const REPORT_FORMAT: &str = "propb-report/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    entries: Vec<(String, String)>,
    checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            entries: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn entry(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    /// Adds `key` in exact form and `key.decimal`.
    pub fn exact(&mut self, key: &str, value: &DyadicValue) -> &mut Self {
        self.entry(key, value);
        self.entry(format!("{key}.decimal"), value.to_decimal_string())
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        pass: bool,
    ) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
        self
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// Values are flattened onto one line so the layout stays line-oriented.
fn one_line(s: &str) -> String {
    s.replace('\n', " ")
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "format = {REPORT_FORMAT}")?;
        writeln!(f, "command = {}", self.command)?;
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {}", one_line(v))?;
        }
        for c in &self.checks {
            writeln!(f, "check.{}.expected = {}", c.name, one_line(&c.expected))?;
            writeln!(f, "check.{}.actual = {}", c.name, one_line(&c.actual))?;
            writeln!(f, "check.{}.status = {}", c.name, status(c.pass))?;
        }
        if !self.checks.is_empty() {
            writeln!(f, "summary.checks = {}", self.checks.len())?;
            writeln!(f, "summary.failed = {}", self.failed())?;
            writeln!(f, "summary.status = {}", status(self.all_passed()))?;
        }
        Ok(())
    }
}
