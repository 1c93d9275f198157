//! Strict pullbacks and pseudopullbacks of realized maps.

use gral_core::groupoid::{codiscrete, cyclic};
use gral_core::{Caps, GFunctor, NatIso};
use gral_pgasm::pathcat::{pseudopullback_asm, pullback_asm};
use gral_pgasm::{Assembly, RealizedMorphism};

fn main() -> gral_core::Result<()> {
    let caps = Caps::default();
    let x = Assembly::of(&GFunctor::identity(&cyclic(2, "g")));
    let pts = Assembly::of(&GFunctor::identity(&codiscrete(&["p".into(), "q".into()])));
    let f = RealizedMorphism::to_terminal(&x);
    let g = RealizedMorphism::to_terminal(&pts);

    let pb = pullback_asm(&f, &g, &caps)?;
    println!("X ×₁ P: {} objects, {} morphisms", pb.asm.base.object_count(), pb.asm.base.morphism_count());
    let u = pb.universal(&pb.p1, &pb.p2)?;
    println!("⟨p1, p2⟩ = id: {}", u == RealizedMorphism::identity(&pb.asm));

    let t = Assembly::interval();
    let h = RealizedMorphism::to_terminal(&t);
    let pp = pseudopullback_asm(&h, &h, &caps)?;
    println!(
        "I ×≃ I over 1: {} objects, {} morphisms",
        pp.asm.base.object_count(),
        pp.asm.base.morphism_count()
    );
    let n = pp.count_factorisations(&pp.p1.fun, &pp.p2.fun, &NatIso::identity(&h.fun.after(&pp.p1.fun)?), &caps)?;
    println!("factorisations of (p1, p2, id) through the pseudopullback: {n}");
    Ok(())
}
