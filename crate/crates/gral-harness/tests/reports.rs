use gral_core::interval::COINVERSE_FAMILY;
use gral_harness::format::{parse_document, resolve};
use gral_harness::{replay, run_suite, SuiteConfig, SUITES};

fn cfg(seed: u64) -> SuiteConfig {
    SuiteConfig { seed, ..SuiteConfig::default() }
}

#[test]
fn reports_are_byte_stable_and_sorted() {
    for suite in ["cogroupoid", "finite-limits", "comb-alg"] {
        let a = run_suite(suite, &cfg(7)).unwrap();
        let b = run_suite(suite, &cfg(7)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_string(), b.to_string());
        let names: Vec<&str> = a.checks.iter().map(|c| c.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(run_suite("nope", &cfg(0)).is_err());
    assert_eq!(SUITES.len(), 10);
}

#[test]
fn broken_cleavage_fails_with_a_counterexample() {
    let c = SuiteConfig { inject_fault: true, ..cfg(0) };
    let report = run_suite("path-axioms", &c).unwrap();
    let failed: Vec<&str> = report.failures().iter().map(|f| f.name.as_str()).collect();
    assert_eq!(failed, ["cleavage-split"]);
    let payload = report.check("cleavage-split").unwrap().counterexample.clone().unwrap();
    let inputs = payload["inputs"].as_str().unwrap();
    let r = resolve(&parse_document(inputs, "").unwrap(), None).unwrap();
    assert!(r.functors.contains_key("F"));
    assert!(report.to_string().contains("FAIL path-axioms"));
}

#[test]
fn replaying_a_payload_reproduces_the_failure() {
    let c = SuiteConfig { inject_fault: true, ..cfg(4) };
    let report = run_suite("path-axioms", &c).unwrap();
    let payload = report.failures()[0].counterexample.clone().unwrap();
    let again = replay(&payload).unwrap();
    assert_eq!(again.to_json(), report.to_json());
    assert!(!again.passed());
}

#[test]
fn mutated_sigma_breaks_only_coinverses() {
    let c = SuiteConfig { inject_fault: true, ..cfg(0) };
    let report = run_suite("cogroupoid", &c).unwrap();
    let failed: Vec<&str> = report.failures().iter().map(|f| f.name.as_str()).collect();
    assert!(failed.contains(&"gpd/coinverse-left") && failed.contains(&"gpd/coinverse-right"));
    for name in failed {
        let axiom = name.strip_prefix("gpd/").unwrap();
        assert!(COINVERSE_FAMILY.contains(&axiom), "{name}");
    }
}

#[test]
fn min_instances_raises_counts() {
    let c = SuiteConfig { min_instances: Some(30), ..cfg(1) };
    let report = run_suite("finite-limits", &c).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.checks.iter().all(|ch| ch.instances >= 30));
}
