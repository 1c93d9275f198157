//! Print the groupoid interval `𝕀₀ → 𝕀₁ → 𝕀₂ → 𝕀₃` as a document.

use gral_core::interval::gpd_interval;
use gral_harness::format::Document;

fn main() {
    let iv = gpd_interval();
    let mut doc = Document::new();
    for (k, g) in iv.obj.iter().enumerate() {
        doc.push_groupoid(&format!("I{k}"), g);
    }
    let json = std::env::args().any(|a| a == "--json");
    if json {
        println!("{}", doc.to_json());
    } else {
        print!("{doc}");
    }
}
