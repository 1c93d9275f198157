//! Assemblies, realized maps, products and modesty.

use gral_core::groupoid::{codiscrete, cyclic, walking_iso, Obj};
use gral_core::{enumerate, Caps, GFunctor};
use gral_pgasm::asm::{find_realizer, product};
use gral_pgasm::{Assembly, RealizedMorphism};

fn main() -> gral_core::Result<()> {
    let caps = Caps::default();
    let z2 = cyclic(2, "g");
    let x = Assembly::of(&GFunctor::identity(&z2));
    let nab = Assembly::chaotic(&z2, &walking_iso(), Obj(0));
    println!("X = (Z2, Z2, id): modest {}", x.is_modest());
    println!("∇Z2 over I: {}", nab.modesty());

    let pts = codiscrete(&["p".into(), "q".into()]);
    let w = Assembly::of(&GFunctor::constant(&pts, &z2, Obj(0)));
    let funs = enumerate::functors(&w.base, &x.base, caps.max_morphisms)?;
    let realized: Vec<RealizedMorphism> = funs
        .iter()
        .filter_map(|f| find_realizer(&w, &x, f, &caps).transpose())
        .collect::<gral_core::Result<_>>()?;
    println!("functors W → X: {}, realized: {}", funs.len(), realized.len());

    let p = product(&x, &Assembly::interval(), &caps)?;
    println!(
        "X × I: {} objects, realizer type with {} objects, modest {}",
        p.asm.base.object_count(),
        p.asm.rtype.object_count(),
        p.asm.is_modest()
    );
    let f = &realized[0];
    let h = RealizedMorphism::to_terminal(&w);
    let q = product(&x, &Assembly::terminal(), &caps)?;
    let u = q.pair(f, &h)?;
    assert_eq!(q.fst().after(&u)?, *f);
    assert_eq!(q.snd().after(&u)?, h);
    println!("⟨F, !⟩ is valid and projects back: {}", u.is_valid());
    Ok(())
}
