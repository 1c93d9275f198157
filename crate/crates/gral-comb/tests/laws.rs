use gral_comb::poly::{check_bracket, leaf, polynomial};
use gral_comb::{normalize, parse_term, parse_type, Tca, Term, Ty};
use proptest::prelude::*;

fn o() -> Ty {
    Ty::base("o")
}

fn driven(choices: Vec<usize>) -> impl FnMut(usize) -> usize {
    let mut k = 0;
    move |n| {
        let c = choices.get(k).copied().unwrap_or(0);
        k += 1;
        c % n
    }
}

fn shapes() -> Vec<Ty> {
    vec![o(), Ty::arrow(o(), o()), Ty::Unit]
}

proptest! {
    #[test]
    fn bracket_abstraction_beta(choices in prop::collection::vec(0usize..1000, 64), xi in 0usize..2, ti in 0usize..2) {
        let tca = Tca::standard().unit_augmentation();
        let tys = shapes();
        let (xty, ty) = (tys[xi].clone(), tys[ti].clone());
        let vars = vec![("x".to_string(), xty.clone()), ("y".to_string(), o())];
        let mut ch = driven(choices);
        let t = polynomial(&tca, &ty, 4, &vars, &tys, &mut ch);
        let a = leaf(&tca, &xty, &mut ch);
        let c = check_bracket(&tca, &t, "x", &xty, &a).unwrap();
        prop_assert!(c.holds(), "{} / {}", t, c.abstraction);
    }

    #[test]
    fn normalization_is_idempotent_and_typed(choices in prop::collection::vec(0usize..1000, 64)) {
        let tca = Tca::standard().unit_augmentation();
        let mut ch = driven(choices);
        let t = polynomial(&tca, &o(), 5, &[], &shapes(), &mut ch);
        let n = normalize(&t).unwrap();
        prop_assert_eq!(n.type_of().unwrap(), o());
        prop_assert_eq!(normalize(&n).unwrap(), n);
    }

    #[test]
    fn syntax_round_trip(choices in prop::collection::vec(0usize..1000, 64), ti in 0usize..3) {
        let tca = Tca::standard().unit_augmentation();
        let tys = shapes();
        let vars = vec![("x".to_string(), o()), ("f".to_string(), Ty::arrow(o(), o()))];
        let mut ch = driven(choices);
        let t = polynomial(&tca, &tys[ti], 4, &vars, &tys, &mut ch);
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t.clone());
        let ty = t.type_of().unwrap();
        prop_assert_eq!(parse_type(&ty.to_string()).unwrap(), ty);
    }
}

#[test]
fn unit_free_types_stay_unit_free() {
    let tca = Tca::standard().unit_augmentation();
    let frag = tca.fragment(&shapes(), 3, 20000).unwrap();
    for ty in [o(), Ty::arrow(o(), o())] {
        for t in frag.of(&ty) {
            assert!(gral_comb::asm::unit_free(t), "{t}");
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse_term("K[o, o] (@a:o").unwrap_err();
    assert_eq!(e.line, 1);
    assert!(e.col > 10);
    assert!(parse_type("o ->").is_err());
    assert_eq!(parse_term("STAR").unwrap(), Term::Star);
}
