//! Check the cogroupoid axioms for the walking-isomorphism interval, then
//! for a copy whose reversal map is the identity.

use gral_core::interval::{check_cogroupoid, gpd_interval, mutated_sigma_interval};
use gral_core::Gpd;

fn main() {
    let cat = Gpd::default();
    for (label, iv) in [("standard", gpd_interval()), ("sigma = id", mutated_sigma_interval())] {
        let report = check_cogroupoid(&cat, &iv);
        println!("{label}:");
        for e in &report.entries {
            let mark = if e.passed { "ok  " } else { "FAIL" };
            println!("  {mark} {}", e.name);
        }
        for n in &report.notes {
            println!("  note: {n}");
        }
    }
}
