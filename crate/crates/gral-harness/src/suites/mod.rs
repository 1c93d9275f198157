//! The ten suites. Each one is deterministic in its [`SuiteConfig`].

use std::time::Instant;

use gral_core::groupoid::FinGroupoid;
use gral_core::GFunctor;
use gral_pgasm::{Assembly, RealizedMorphism};
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::Document;
use crate::report::{Check, Report, SuiteConfig};

mod ccc;
mod cogroupoid;
mod comb;
mod fundamental;
mod limits;
mod modest;
mod path;
mod squares;
mod two_one;
mod weak_pi;

pub const SUITES: [&str; 10] = [
    "cogroupoid",
    "fundamental-groupoid",
    "squares",
    "two-one-axioms",
    "pgasm-ccc",
    "finite-limits",
    "path-axioms",
    "weak-pi",
    "modest-closure",
    "comb-alg",
];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; known suites: {list}", list = SUITES.join(", "))]
    Unknown(String),
    #[error("malformed payload: {0}")]
    Payload(String),
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let run: fn(&SuiteConfig) -> Vec<Check> = match name {
        "cogroupoid" => cogroupoid::run,
        "fundamental-groupoid" => fundamental::run,
        "squares" => squares::run,
        "two-one-axioms" => two_one::run,
        "pgasm-ccc" => ccc::run,
        "finite-limits" => limits::run,
        "path-axioms" => path::run,
        "weak-pi" => weak_pi::run,
        "modest-closure" => modest::run,
        "comb-alg" => comb::run,
        _ => return Err(SuiteError::Unknown(name.into())),
    };
    let t = Instant::now();
    let checks = run(cfg);
    Ok(Report::new(name, cfg, checks, t.elapsed()))
}

/// Re-run the suite and configuration recorded in a counterexample payload.
pub fn replay(payload: &Value) -> Result<Report, SuiteError> {
    let suite = payload["suite"]
        .as_str()
        .ok_or_else(|| SuiteError::Payload("no suite".into()))?;
    let cfg: SuiteConfig = serde_json::from_value(payload["config"].clone())
        .map_err(|e| SuiteError::Payload(e.to_string()))?;
    run_suite(suite, &cfg)
}

/// Inputs of one failing instance, serialized in the text format.
/// Instances that exceed the size caps are skipped and resampled.
pub(crate) fn over_cap(e: &gral_core::Error) -> bool {
    matches!(e, gral_core::Error::SizeCap { .. })
}

pub(crate) struct Witness<'a> {
    cfg: &'a SuiteConfig,
    suite: &'static str,
    check: String,
    instance: usize,
    doc: Document,
    notes: Vec<(String, String)>,
}

impl<'a> Witness<'a> {
    pub fn new(cfg: &'a SuiteConfig, suite: &'static str, check: &str, instance: usize) -> Self {
        Witness {
            cfg,
            suite,
            check: check.into(),
            instance,
            doc: Document::new(),
            notes: Vec::new(),
        }
    }

    pub fn groupoid(mut self, name: &str, g: &FinGroupoid) -> Self {
        self.doc.push_groupoid(name, g);
        self
    }

    pub fn assembly(mut self, name: &str, x: &Assembly) -> Self {
        self.doc.push_assembly(name, x);
        self
    }

    /// A realized map, recorded by its assemblies and underlying functor.
    pub fn map(mut self, name: &str, m: &RealizedMorphism) -> Self {
        let (s, t) = (format!("{name}.src"), format!("{name}.tgt"));
        self.doc.push_assembly(&s, &m.src);
        self.doc.push_assembly(&t, &m.tgt);
        self.doc.push_functor(name, &format!("{s}.base"), &format!("{t}.base"), &m.fun);
        self
    }

    /// A functor between groupoids, recorded with both ends.
    pub fn functor(mut self, name: &str, f: &GFunctor) -> Self {
        let (d, c) = (format!("{name}.dom"), format!("{name}.cod"));
        self.doc.push_groupoid(&d, f.dom());
        self.doc.push_groupoid(&c, f.cod());
        self.doc.push_functor(name, &d, &c, f);
        self
    }

    pub fn note(mut self, k: &str, v: impl ToString) -> Self {
        self.notes.push((k.into(), v.to_string()));
        self
    }

    pub fn finish(self, detail: impl Into<String>) -> (String, Value) {
        let notes: serde_json::Map<String, Value> =
            self.notes.into_iter().map(|(k, v)| (k, Value::String(v))).collect();
        let payload = json!({
            "suite": self.suite,
            "check": self.check,
            "instance": self.instance,
            "config": self.cfg,
            "notes": notes,
            "inputs": self.doc.to_string(),
        });
        (detail.into(), payload)
    }
}
