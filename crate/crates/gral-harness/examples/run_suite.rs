//! Run one suite, then break it on purpose and replay the counterexample.
//!
//! `cargo run --example run_suite -- [SUITE] [SEED]`

use gral_harness::{replay, run_suite, SuiteConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "path-axioms".into());
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
    let report = run_suite(&name, &cfg).expect("known suite");
    print!("{report}");

    let broken = SuiteConfig { inject_fault: true, ..cfg };
    let report = run_suite(&name, &broken).expect("known suite");
    for c in report.failures() {
        println!("with a broken fixture, {} fails: {}", c.name, c.detail);
        if let Some(p) = &c.counterexample {
            let again = replay(p).expect("payload replays");
            println!("replayed: {}", if again.passed() { "passes" } else { "fails again" });
        }
    }
}
