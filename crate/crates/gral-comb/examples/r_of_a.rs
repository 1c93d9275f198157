//! Assemblies over A and over R(A), and the round trip between them.

use gral_comb::asm::{bridge_round_trip, unit_retype};
use gral_comb::{app, DiscreteAssembly, DiscreteMorphism, RCat, Tca, Term, Ty};

fn main() {
    let tca = Tca::standard().unit_augmentation();
    let o = Ty::base("o");
    let r = RCat::new(&tca, &[o.clone(), Ty::arrow(o.clone(), o.clone())], 3, 20_000).unwrap();
    println!("hom(o, o) in R(A): {} functions", r.hom(&o, &o).len());

    let a = Term::Const("a".into(), o.clone());
    let b = Term::Const("b".into(), o.clone());
    let x = DiscreteAssembly::new(&tca, o.clone(), vec![a.clone(), b.clone()]).unwrap();
    let const_b = DiscreteMorphism {
        fun: vec![1, 1],
        realizer: app(Term::K(o.clone(), o.clone()), b),
    };
    let id = DiscreteMorphism::identity(&x).unwrap();
    let rep = bridge_round_trip(&r, &x, &x, &[id, const_b]).unwrap();
    println!("Asm(A) = Asm(R(A)) round trip: {}", rep.holds());

    let one = DiscreteAssembly::new(&tca, Ty::Unit, vec![Term::Star; 2]).unwrap();
    let iso = unit_retype(&tca, &one, &o, &a).unwrap();
    println!("unit-realized assembly retyped at o: {}", iso.verify(&tca).is_empty());
}
