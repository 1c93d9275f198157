//! Suite configuration and reports.

use std::fmt;
use std::time::Duration;

use gral_core::Caps;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_objects: usize,
    pub max_morphisms: usize,
    /// Raise every instance count to at least this many.
    pub min_instances: Option<usize>,
    /// Replace one fixture by a broken one.
    pub inject_fault: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let caps = Caps::default();
        SuiteConfig {
            seed: 0,
            max_objects: caps.max_objects,
            max_morphisms: caps.max_morphisms,
            min_instances: None,
            inject_fault: false,
        }
    }
}

impl SuiteConfig {
    pub fn caps(&self) -> Caps {
        Caps {
            max_objects: self.max_objects.max(1),
            max_morphisms: self.max_morphisms.max(1),
        }
    }

    /// The number of instances to generate when the suite needs `n`.
    pub fn count(&self, n: usize) -> usize {
        self.min_instances.map_or(n, |m| m.max(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub instances: usize,
    pub required: usize,
    pub detail: String,
    /// The inputs of the first failing instance.
    pub counterexample: Option<Value>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates instances of one check.
#[derive(Clone, Debug)]
pub struct Tally {
    name: String,
    required: usize,
    instances: usize,
    failures: usize,
    first: Option<(String, Value)>,
}

impl Tally {
    pub fn new(name: &str, required: usize) -> Tally {
        Tally {
            name: name.into(),
            required,
            instances: 0,
            failures: 0,
            first: None,
        }
    }

    pub fn pass(&mut self) {
        self.instances += 1;
    }

    pub fn fail(&mut self, detail: impl Into<String>, payload: Value) {
        self.instances += 1;
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some((detail.into(), payload));
        }
    }

    /// Record `ok`; `why` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, why: impl FnOnce() -> (String, Value)) {
        if ok {
            self.pass();
        } else {
            let (d, p) = why();
            self.fail(d, p);
        }
    }

    pub fn instances(&self) -> usize {
        self.instances
    }

    /// A check that could not be run.
    pub fn finish_with_error(mut self, why: impl Into<String>) -> Check {
        let why = why.into();
        self.fail(why.clone(), serde_json::json!({ "error": why }));
        self.finish()
    }

    pub fn finish(self) -> Check {
        let (status, detail, counterexample) = match self.first {
            Some((d, p)) => (Status::Fail, format!("{} of {} failed: {d}", self.failures, self.instances), Some(p)),
            None if self.instances < self.required => (
                Status::Fail,
                format!("only {} instances, {} required", self.instances, self.required),
                None,
            ),
            None => (Status::Pass, format!("{} instances", self.instances), None),
        };
        Check {
            name: self.name,
            status,
            instances: self.instances,
            required: self.required,
            detail,
            counterexample,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub checks: Vec<Check>,
    /// Wall time; not part of the serialized report so that reports are
    /// byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(suite: &str, config: &SuiteConfig, mut checks: Vec<Check>, elapsed: Duration) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            suite: suite.into(),
            config: config.clone(),
            checks,
            elapsed,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} seed {} caps {}/{}",
            self.suite, self.config.seed, self.config.max_objects, self.config.max_morphisms
        )?;
        for c in &self.checks {
            let mark = if c.passed() { "pass" } else { "FAIL" };
            writeln!(f, "  {mark} {}: {}", c.name, c.detail)?;
            if let Some(p) = &c.counterexample {
                writeln!(f, "    counterexample: {p}")?;
            }
        }
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        writeln!(f, "{verdict} {}", self.suite)
    }
}
