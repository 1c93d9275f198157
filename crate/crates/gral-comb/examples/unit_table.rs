//! The unit augmentation and its table, checked by normalization.

use gral_comb::{Tca, Ty};

fn main() {
    let tca = Tca::standard().unit_augmentation();
    let o = Ty::base("o");
    let idx = [o.clone(), Ty::arrow(o.clone(), o), Ty::Unit];
    let frag = tca.fragment(&idx, 3, 20_000).unwrap();
    println!("fragment: {} normal forms", frag.len());
    let eqs = tca.unit_table_checks(&idx, &frag, 2).unwrap();
    for e in eqs.iter().filter(|e| !e.name.contains(" x ") && !e.name.contains(" f a")) {
        println!("{:<24} {}", e.name, if e.holds { "ok" } else { "FAILS" });
    }
    let bad = eqs.iter().filter(|e| !e.holds).count();
    println!("{} equations, {} failures", eqs.len(), bad);
}
