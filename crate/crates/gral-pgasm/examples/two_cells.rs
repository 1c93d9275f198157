//! 2-cells `F ⇒ G` as maps out of the cylinder, composed vertically and
//! horizontally.

use gral_core::groupoid::cyclic;
use gral_core::{enumerate, Caps, GFunctor};
use gral_pgasm::asm::find_realizer;
use gral_pgasm::{Assembly, RealizedMorphism, TwoCell};

fn main() -> gral_core::Result<()> {
    let caps = Caps::default();
    let z3 = cyclic(3, "r");
    let x = Assembly::of(&GFunctor::identity(&z3));
    let id = RealizedMorphism::identity(&x);
    let mut cells = Vec::new();
    for n in enumerate::natisos(&id.fun, &id.fun, caps.max_morphisms)? {
        if let Some(c) = TwoCell::realize(&id, &id, &n, &caps)? {
            cells.push(c);
        }
    }
    println!("realized 2-cells id ⇒ id on Z3: {}", cells.len());
    let (a, b) = (&cells[1], &cells[2]);
    let v = a.vertical(b)?;
    let h = a.horizontal(b)?;
    println!("vertical valid {}, horizontal valid {}", v.is_valid(), h.is_valid());
    let back = a.vertical(&a.inverse()?)?;
    println!("α⁻¹∘α is the identity: {}", back.natiso()? == TwoCell::identity(&id, &caps)?.natiso()?);

    let fs = enumerate::functors(&z3, &z3, caps.max_morphisms)?;
    let realized = fs.iter().filter(|f| matches!(find_realizer(&x, &x, f, &caps), Ok(Some(_)))).count();
    println!("endofunctors of Z3: {}, realized: {realized}", fs.len());
    Ok(())
}
