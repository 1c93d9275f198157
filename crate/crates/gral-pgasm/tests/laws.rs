use gral_core::groupoid::{codiscrete, cyclic, disjoint_union, terminal, Grpd, Obj};
use gral_core::{enumerate, Caps, Error, GFunctor, NatIso};
use gral_pgasm::asm::{find_realizer, product};
use gral_pgasm::depprod::{compose_fibrations, is_modest_fibration, nabla, nabla_map, pullback_fibration, split};
use gral_pgasm::pathcat::{equivalence, is_fibration, path_object, pullback_asm};
use gral_pgasm::{weak_exponential, Asm, Assembly, RealizedMorphism, TwoCell};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Over-cap instances are rejected, not failed.
fn fits<T>(r: gral_core::Result<T>) -> Result<T, TestCaseError> {
    match r {
        Err(e @ Error::SizeCap { .. }) => Err(TestCaseError::reject(e.to_string())),
        r => Ok(r?),
    }
}

fn component(codisc: bool, n: usize) -> Grpd {
    if codisc {
        let ids: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
        codiscrete(&ids)
    } else {
        cyclic(n, "g")
    }
}

fn groupoid() -> impl Strategy<Value = Grpd> {
    prop::collection::vec((any::<bool>(), 1usize..3), 1..3).prop_map(|parts| {
        let gs: Vec<Grpd> = parts.into_iter().map(|(c, n)| component(c, n)).collect();
        if gs.len() == 1 {
            gs[0].clone()
        } else {
            disjoint_union(&gs)
        }
    })
}

/// An assembly whose realizability functor is picked among all functors.
fn assembly() -> impl Strategy<Value = Asm> {
    (groupoid(), groupoid(), any::<prop::sample::Index>()).prop_map(|(x, a, i)| {
        let fs = enumerate::functors(&x, &a, 4096).unwrap();
        Assembly::of(&fs[i.index(fs.len())])
    })
}

fn realized_maps(x: &Asm, y: &Asm, caps: &Caps) -> Vec<RealizedMorphism> {
    enumerate::functors(&x.base, &y.base, caps.max_morphisms)
        .unwrap()
        .iter()
        .filter_map(|f| find_realizer(x, y, f, caps).unwrap())
        .collect()
}

#[test]
fn nabla_realizes_every_functor() {
    let z2 = cyclic(2, "g");
    let n = nabla(&z2, &terminal(), Obj(0)).unwrap();
    assert!(!n.is_modest());
    let x = Assembly::of(&GFunctor::identity(&cyclic(4, "r")));
    for f in enumerate::functors(&x.base, &z2, 4096).unwrap() {
        assert!(nabla_map(&x, &n, f).unwrap().is_valid());
    }
    assert!(nabla(&z2, &terminal(), Obj(1)).is_err());
}

#[test]
fn pulling_back_along_a_looped_realizer_loses_modesty() {
    let caps = Caps::default();
    let one = Assembly::terminal();
    let id = is_fibration(&RealizedMorphism::identity(&one)).unwrap();
    assert!(is_modest_fibration(&id).unwrap());
    let z2 = Assembly::of(&GFunctor::identity(&cyclic(2, "g")));
    let (_, pulled) = pullback_fibration(&id, &RealizedMorphism::to_terminal(&z2), &caps).unwrap();
    assert!(!is_modest_fibration(&pulled).unwrap());
}

#[test]
fn split_replacement_is_equivalent_and_split() {
    let caps = Caps::default();
    let y = Assembly::of(&GFunctor::identity(&codiscrete(&["p".into(), "q".into()])));
    let m = is_fibration(&RealizedMorphism::to_terminal(&y)).unwrap();
    let sp = split(&m, &caps).unwrap();
    assert!(sp.fibration.cleavage.is_normal());
    assert!(is_modest_fibration(&sp.fibration).unwrap());
    let eq = equivalence(&sp.s, &caps).unwrap().expect("S is an equivalence");
    assert!(eq.is_valid());
}

#[test]
fn path_object_factors_the_diagonal() {
    let caps = Caps::default();
    let x = Assembly::of(&GFunctor::constant(&cyclic(2, "g"), &terminal(), Obj(0)));
    let po = path_object(&x, &caps).unwrap();
    let id = RealizedMorphism::identity(&x);
    assert_eq!(po.st.after(&po.r).unwrap(), po.xx.pair(&id, &id).unwrap());
    assert!(is_fibration(&po.fibration.map).is_ok());
    assert!(po.equivalence(&caps).unwrap().is_valid());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_are_universal(w in assembly(), x in assembly(), y in assembly()) {
        let caps = Caps::default();
        let p = fits(product(&x, &y, &caps))?;
        for f in realized_maps(&w, &x, &caps).iter().take(3) {
            for g in realized_maps(&w, &y, &caps).iter().take(3) {
                let u = p.pair(f, g)?;
                prop_assert!(u.is_valid());
                prop_assert_eq!(&p.fst().after(&u)?, f);
                prop_assert_eq!(&p.snd().after(&u)?, g);
            }
        }
    }

    #[test]
    fn exponential_beta_law(x in assembly(), y in assembly()) {
        let caps = Caps::default();
        let z = Assembly::interval();
        let w = fits(weak_exponential(&x, &y, &caps))?;
        let zx = fits(product(&z, &x, &caps))?;
        let (ex, ev) = fits(w.ev(&caps))?;
        prop_assert!(ev.is_valid());
        for k in realized_maps(&zx.asm, &y, &caps).iter().take(4) {
            let kt = fits(w.transpose(&zx, k, &caps))?;
            let back = ev.after(&ex.times(&zx, &kt, &RealizedMorphism::identity(&x))?)?;
            prop_assert_eq!(&back, k);
        }
    }

    #[test]
    fn exponentials_into_modest_assemblies_are_modest(x in assembly(), y in groupoid()) {
        let caps = Caps::default();
        let y = Assembly::of(&GFunctor::identity(&y));
        prop_assert!(fits(weak_exponential(&x, &y, &caps))?.asm.is_modest());
    }

    #[test]
    fn pullbacks_are_universal(x in assembly(), y in assembly()) {
        let caps = Caps::default();
        let (f, g) = (RealizedMorphism::to_terminal(&x), RealizedMorphism::to_terminal(&y));
        let pb = fits(pullback_asm(&f, &g, &caps))?;
        prop_assert!(pb.p1.is_valid() && pb.p2.is_valid());
        prop_assert_eq!(f.after(&pb.p1)?, g.after(&pb.p2)?);
        prop_assert_eq!(pb.universal(&pb.p1, &pb.p2)?, RealizedMorphism::identity(&pb.asm));
    }

    #[test]
    fn fibrations_compose(x in assembly()) {
        let f = is_fibration(&RealizedMorphism::identity(&x)).unwrap();
        let g = is_fibration(&RealizedMorphism::to_terminal(&x)).unwrap();
        let c = compose_fibrations(&g, &f)?;
        prop_assert!(c.map.is_valid() && c.cleavage.is_normal());
        prop_assert_eq!(c.map, g.map);
    }

    #[test]
    fn two_cells_have_inverses(x in assembly()) {
        let caps = Caps::default();
        let id = RealizedMorphism::identity(&x);
        for n in enumerate::natisos(&id.fun, &id.fun, caps.max_morphisms)?.iter().take(4) {
            let Some(c) = TwoCell::realize(&id, &id, n, &caps)? else { continue };
            prop_assert!(c.is_valid());
            let back = c.vertical(&c.inverse()?)?;
            prop_assert_eq!(back.natiso()?, NatIso::identity(&id.fun));
        }
    }
}
