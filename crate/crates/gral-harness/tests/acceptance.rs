//! The ten acceptance criteria, one line each. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Duration;

use gral_harness::{run_suite, SuiteConfig};

struct Criterion {
    suite: &'static str,
    budget: Duration,
    /// Checks that must be present and pass, with their minimum instance
    /// counts.
    checks: &'static [(&'static str, usize)],
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        suite: "cogroupoid",
        budget: secs(1),
        checks: &[
            ("gpd/coassociativity", 1),
            ("gpd/cocomposition-source", 1),
            ("gpd/cocomposition-target", 1),
            ("gpd/coidentity-endpoints", 1),
            ("gpd/coidentity-left", 1),
            ("gpd/coidentity-right", 1),
            ("gpd/coinverse-left", 1),
            ("gpd/coinverse-right", 1),
            ("gpd/sigma-endpoints", 1),
            ("gpd/sigma-involution", 1),
            ("gpd/pushout-i2", 1),
            ("gpd/pushout-i3", 1),
            ("mutated-sigma-fails-coinverse-only", 1),
        ],
    },
    Criterion {
        suite: "fundamental-groupoid",
        budget: secs(10),
        checks: &[
            ("pi-iso", 50),
            ("pi-functor-identity", 50),
            ("pi-functor-composition", 50),
            ("boundary-lemma", 100),
        ],
    },
    Criterion {
        suite: "squares",
        budget: secs(10),
        checks: &[
            ("fill-after-boundary", 100),
            ("boundary-after-fill", 100),
            ("boundary-preserves-vertical-composition", 1),
            ("boundary-preserves-horizontal-composition", 1),
        ],
    },
    Criterion {
        suite: "two-one-axioms",
        budget: secs(30),
        checks: &[
            ("vertical-composite", 100),
            ("horizontal-composite", 100),
            ("interchange", 100),
            ("identity-cell", 100),
            ("inverse-cell", 100),
        ],
    },
    Criterion {
        suite: "pgasm-ccc",
        budget: secs(60),
        checks: &[
            ("terminal-universal", 1),
            ("product-universal", 1),
            ("exponential-beta", 20),
            ("exponential-preserves-modesty", 10),
        ],
    },
    Criterion {
        suite: "finite-limits",
        budget: secs(60),
        checks: &[("pullback-universal", 20), ("pseudopullback-universal", 20)],
    },
    Criterion {
        suite: "path-axioms",
        budget: secs(120),
        checks: &[
            ("pc1-isomorphisms-are-fibrations", 20),
            ("pc1-fibrations-compose", 30),
            ("pc2-pullbacks-of-fibrations", 30),
            ("pc3-maps-to-terminal-are-fibrations", 20),
            ("pc4-isomorphisms-are-equivalences", 20),
            ("pc5-two-out-of-six", 1),
            ("pc6-r-is-equivalence", 20),
            ("pc6-st-after-r-is-diagonal", 20),
            ("pc6-st-is-fibration", 20),
            ("pc7-section", 1),
            ("pc8-pullback-pseudoinverse", 1),
            ("cleavage-split", 30),
            ("brown-lemma", 10),
        ],
    },
    Criterion {
        suite: "weak-pi",
        budget: secs(120),
        checks: &[("pi-is-fibration", 20), ("ev-lies-over-y", 20), ("beta-law", 20)],
    },
    Criterion {
        suite: "modest-closure",
        budget: secs(60),
        checks: &[
            ("composition", 10),
            ("pullback-stability", 10),
            ("split-replacement", 10),
            ("dependent-product", 10),
            ("non-modest-fixture-rejected", 1),
        ],
    },
    Criterion {
        suite: "comb-alg",
        budget: secs(30),
        checks: &[
            ("k-s-equations", 1),
            ("unit-table", 1),
            ("bracket-substitution", 200),
            ("r-of-a-round-trip", 10),
            ("unit-retype-round-trip", 10),
        ],
    },
];

fn main() -> ExitCode {
    let seed = std::env::var("GRAL_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
    let mut failed = 0;
    for (k, c) in CRITERIA.iter().enumerate() {
        let report = run_suite(c.suite, &cfg).expect("known suite");
        let mut problems: Vec<String> = report
            .failures()
            .iter()
            .map(|f| format!("{}: {}", f.name, f.detail))
            .collect();
        for &(name, min) in c.checks {
            match report.check(name) {
                None => problems.push(format!("{name}: missing")),
                Some(ch) if ch.instances < min => problems.push(format!("{name}: {} < {min} instances", ch.instances)),
                Some(_) => {}
            }
        }
        if report.elapsed >= c.budget {
            problems.push(format!("took {:?}, budget {:?}", report.elapsed, c.budget));
        }
        let ms = report.elapsed.as_millis();
        if problems.is_empty() {
            println!("pass criterion {} {} ({ms} ms)", k + 1, c.suite);
        } else {
            failed += 1;
            println!("FAIL criterion {} {} ({ms} ms): {}", k + 1, c.suite, problems.join("; "));
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
