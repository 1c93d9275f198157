//! The weak exponential `Yˣ`, evaluation and the β-law `ev∘(K̃ × id) = K`.

use gral_core::groupoid::cyclic;
use gral_core::{enumerate, Caps, GFunctor};
use gral_pgasm::asm::{find_realizer, product};
use gral_pgasm::{weak_exponential, Assembly, RealizedMorphism};

fn main() -> gral_core::Result<()> {
    let caps = Caps::default();
    let x = Assembly::interval();
    let y = Assembly::of(&GFunctor::identity(&cyclic(2, "g")));
    let w = weak_exponential(&x, &y, &caps)?;
    println!(
        "Yˣ: {} objects, {} morphisms, modest {}",
        w.asm.base.object_count(),
        w.asm.base.morphism_count(),
        w.asm.is_modest()
    );
    let (ex, ev) = w.ev(&caps)?;
    println!("ev valid: {}", ev.is_valid());

    let z = Assembly::interval();
    let zx = product(&z, &x, &caps)?;
    let mut checked = 0;
    for k in enumerate::functors(&zx.asm.base, &y.base, caps.max_morphisms)? {
        let Some(km) = find_realizer(&zx.asm, &y, &k, &caps)? else { continue };
        let kt = w.transpose(&zx, &km, &caps)?;
        let back = ev.after(&ex.times(&zx, &kt, &RealizedMorphism::identity(&x))?)?;
        assert_eq!(back, km);
        checked += 1;
    }
    println!("β-law holds for all {checked} realized K: Z × X → Y");
    Ok(())
}
