//! Seeded generators, the axiom suites, the line-oriented text format and
//! byte-stable reports.

pub mod format;
pub mod gen;
pub mod report;
pub mod suites;

pub use report::{Check, Report, Status, SuiteConfig, Tally};
pub use suites::{replay, run_suite, SUITES};
