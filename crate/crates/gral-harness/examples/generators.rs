//! Seeded generators: the same seed and salt give the same instances.

use gral_core::Caps;
use gral_harness::gen::{is_split, Gen};

fn main() {
    let mut g = Gen::new(7, "demo", Caps::default());
    for _ in 0..3 {
        let x = g.assembly(2, 3);
        println!(
            "assembly: {} objects over a realizer type with {} objects, modest {}",
            x.base.object_count(),
            x.rtype.object_count(),
            x.is_modest()
        );
    }
    let f = g.fibration(2, 2);
    println!(
        "fibration {} → {} objects, split {}",
        f.map.src.base.object_count(),
        f.map.tgt.base.object_count(),
        is_split(&f)
    );
    let (a, b) = (Gen::new(1, "s", Caps::default()).groupoid(3, 3), Gen::new(1, "s", Caps::default()).groupoid(3, 3));
    println!("same seed, same groupoid: {}", *a == *b);
}
