//! Building finite groupoids, products, functors and natural isomorphisms.

use gral_core::construct::product;
use gral_core::enumerate;
use gral_core::groupoid::{codiscrete, cyclic, walking_iso};

fn main() -> gral_core::Result<()> {
    let z3 = cyclic(3, "r");
    let i = walking_iso();
    let p = product(&z3, &i);
    println!("Z3 × I: {} objects, {} morphisms", p.grpd.object_count(), p.grpd.morphism_count());
    assert!(p.grpd.validate().is_valid());

    let ab = codiscrete(&["a".into(), "b".into(), "c".into()]);
    let fs = enumerate::functors(&ab, &z3, 10_000)?;
    println!("functors from the codiscrete 3-object groupoid to Z3: {}", fs.len());
    let name = |f: &gral_core::GFunctor| {
        ab.morphisms()
            .filter(|&m| !ab.is_identity(m))
            .map(|m| format!("{}↦{}", ab.morphism_id(m), z3.morphism_id(f.mor(m))))
            .collect::<Vec<_>>()
            .join(" ")
    };
    for g in &fs[..3] {
        let n = enumerate::natisos(&fs[0], g, 10_000)?.len();
        println!("  [{}] ≅ [{}] in {n} ways", name(&fs[0]), name(g));
    }
    Ok(())
}
