//! The path object `X^I` with `r: X → X^I` and `(s, t): X^I → X × X`.

use gral_core::groupoid::{codiscrete, cyclic, disjoint_union, Obj};
use gral_core::{Caps, GFunctor};
use gral_pgasm::pathcat::{is_fibration, path_object};
use gral_pgasm::{Assembly, RealizedMorphism};

fn main() -> gral_core::Result<()> {
    let caps = Caps::default();
    let base = disjoint_union(&[cyclic(2, "g"), codiscrete(&["a".into(), "b".into()])]);
    let x = Assembly::of(&GFunctor::constant(&base, &cyclic(2, "h"), Obj(0)));
    let po = path_object(&x, &caps)?;
    println!(
        "X: {} objects; X^I: {} objects, {} morphisms",
        x.base.object_count(),
        po.exp.asm.base.object_count(),
        po.exp.asm.base.morphism_count()
    );
    let id = RealizedMorphism::identity(&x);
    let diag = po.xx.pair(&id, &id)?;
    println!("st∘r = Δ: {}", po.st.after(&po.r)? == diag);
    println!("(s, t) is a fibration: {}", is_fibration(&po.fibration.map).is_ok());
    let eq = po.equivalence(&caps)?;
    println!("r is an equivalence with inverse s: {}", eq.is_valid());
    Ok(())
}
