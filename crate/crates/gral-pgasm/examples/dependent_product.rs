//! `Π_F(G)` for `G = π₁: Y × E → Y` with `Y` codiscrete and `E = Z2` and `F: Y → 1`, its evaluation and
//! modesty.

use gral_core::groupoid::{codiscrete, cyclic};
use gral_core::{Caps, GFunctor};
use gral_pgasm::asm::product;
use gral_pgasm::depprod::{is_modest_fibration, split};
use gral_pgasm::pathcat::is_fibration;
use gral_pgasm::{dependent_product, Assembly, RealizedMorphism};

fn main() -> gral_core::Result<()> {
    let caps = Caps::new(256, 1 << 14)?;
    let y = Assembly::of(&GFunctor::identity(&codiscrete(&["p".into(), "q".into()])));
    let e = Assembly::of(&GFunctor::identity(&cyclic(2, "g")));
    let ye = product(&y, &e, &caps)?;
    let fib = |m: &RealizedMorphism| is_fibration(m).expect("an isofibration");
    let g = fib(&ye.fst());
    let f = fib(&RealizedMorphism::to_terminal(&y));

    let dp = dependent_product(&g, &f, &caps)?;
    println!(
        "Π_F(G): {} objects, {} morphisms",
        dp.asm.base.object_count(),
        dp.asm.base.morphism_count()
    );
    println!("Π_F(G) → 1 is a normal fibration: {}", dp.fibration.cleavage.is_normal());
    let (pa, ev) = dp.ev(&caps)?;
    println!("ev valid: {}, lies over Y: {}", ev.is_valid(), g.map.fun.after(&ev.fun)? == pa.p1.fun);
    println!("G modest: {}, Π_F(G) modest: {}", is_modest_fibration(&g)?, is_modest_fibration(&dp.fibration)?);

    let sp = split(&g, &caps)?;
    println!(
        "split replacement of G: {} objects, cleavage normal {}, modest {}",
        sp.asm.base.object_count(),
        sp.fibration.cleavage.is_normal(),
        is_modest_fibration(&sp.fibration)?
    );
    Ok(())
}
