use std::collections::BTreeMap;

use gral_core::interval::{check_cogroupoid, mutated_sigma_interval, AxiomReport, COINVERSE_FAMILY};
use gral_core::{gpd_interval, Gpd};
use gral_pgasm::{pgasm_interval, Pgasm};

use super::Witness;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "cogroupoid";

fn tallies(cfg: &SuiteConfig, prefix: &str, rep: &AxiomReport) -> Vec<Check> {
    let mut by_name: BTreeMap<&str, Tally> = BTreeMap::new();
    for (k, e) in rep.entries.iter().enumerate() {
        let name = format!("{prefix}/{}", e.name);
        let t = by_name.entry(e.name).or_insert_with(|| Tally::new(&name, 1));
        t.record(e.passed, || {
            Witness::new(cfg, SUITE, &name, k)
                .note("diagram", e.name)
                .finish(e.detail.clone())
        });
    }
    by_name.into_values().map(Tally::finish).collect()
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let iv = if cfg.inject_fault {
        mutated_sigma_interval()
    } else {
        gpd_interval()
    };
    let mut out = tallies(cfg, "gpd", &check_cogroupoid(&Gpd::new(cfg.caps()), &iv));
    out.extend(tallies(
        cfg,
        "pgasm",
        &check_cogroupoid(&Pgasm::new(cfg.caps()), &pgasm_interval()),
    ));

    let mut t = Tally::new("mutated-sigma-fails-coinverse-only", 1);
    let rep = check_cogroupoid(&Gpd::new(cfg.caps()), &mutated_sigma_interval());
    let failed: Vec<&str> = rep.failures().iter().map(|e| e.name).collect();
    let ok = !failed.is_empty()
        && failed.iter().all(|n| COINVERSE_FAMILY.contains(n))
        && failed.contains(&"coinverse-left")
        && failed.contains(&"coinverse-right");
    t.record(ok, || {
        Witness::new(cfg, SUITE, "mutated-sigma-fails-coinverse-only", 0)
            .note("failed", failed.join(","))
            .finish("failures are not exactly the coinverse family")
    });
    out.push(t.finish());
    out
}
