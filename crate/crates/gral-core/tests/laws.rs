use gral_core::construct::product;
use gral_core::enumerate;
use gral_core::fundamental::{fundamental, gpd_pi_iso, pi_map};
use gral_core::groupoid::{codiscrete, cyclic, disjoint_union, Grpd};
use gral_core::interval::{check_cogroupoid, gpd_interval};
use gral_core::squares::{boundary, gpd_fill};
use gral_core::{GFunctor, Gpd, RealizerCategory};
use proptest::prelude::*;

fn component(kind: bool, n: usize) -> Grpd {
    if kind {
        codiscrete(&(0..n).map(|k| format!("x{k}")).collect::<Vec<_>>())
    } else {
        cyclic(n, "c")
    }
}

fn groupoid() -> impl Strategy<Value = Grpd> {
    prop::collection::vec((any::<bool>(), 1usize..4), 1..3).prop_map(|parts| {
        let gs: Vec<Grpd> = parts.into_iter().map(|(k, n)| component(k, n)).collect();
        disjoint_union(&gs)
    })
}

#[test]
fn interval_is_a_cogroupoid() {
    let r = check_cogroupoid(&Gpd::default(), &gpd_interval());
    assert!(r.all_pass(), "{:?}", r.failures());
    assert_eq!(r.entries.len(), 12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn products_and_unions_are_groupoids(a in groupoid(), b in groupoid()) {
        prop_assert!(a.validate().is_valid());
        let p = product(&a, &b);
        prop_assert!(p.grpd.validate().is_valid());
        prop_assert_eq!(p.grpd.object_count(), a.object_count() * b.object_count());
        prop_assert_eq!(p.grpd.morphism_count(), a.morphism_count() * b.morphism_count());
    }

    #[test]
    fn functor_composition_is_associative(a in groupoid(), b in groupoid(), pick in any::<[usize; 3]>()) {
        let Ok(fs) = enumerate::functors(&a, &b, 500) else { return Ok(()) };
        let Ok(gs) = enumerate::functors(&b, &a, 500) else { return Ok(()) };
        let (f, g, h) = (&fs[pick[0] % fs.len()], &gs[pick[1] % gs.len()], &fs[pick[2] % fs.len()]);
        prop_assert_eq!(h.after(&g.after(f)?)?, h.after(g)?.after(f)?);
        prop_assert_eq!(f.after(&GFunctor::identity(&a))?, f.clone());
    }

    #[test]
    fn pi_is_isomorphic_to_the_space(a in groupoid()) {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let pi = fundamental(&cat, &iv, &a)?;
        let (to, from) = gpd_pi_iso(&pi)?;
        prop_assert_eq!(from.after(&to)?, GFunctor::identity(&a));
        prop_assert_eq!(to.after(&from)?, GFunctor::identity(&pi.grpd));
    }

    #[test]
    fn pi_preserves_identities(a in groupoid()) {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let pi = fundamental(&cat, &iv, &a)?;
        let m = pi_map(&cat, &pi, &pi, &cat.identity(&a))?;
        prop_assert_eq!(m, GFunctor::identity(&pi.grpd));
    }

    #[test]
    fn fill_inverts_boundary(b in groupoid(), pick in any::<usize>()) {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let a = cyclic(1, "p");
        let cyl = cat.product(&cat.product(&a, &iv.obj[1])?, &iv.obj[1])?;
        let Ok(cells) = enumerate::functors(&cyl, &b, 2000) else { return Ok(()) };
        let phi = &cells[pick % cells.len()];
        let sq = boundary(&cat, &iv, &a, phi)?;
        prop_assert!(sq.commutes(&cat, &iv)?);
        prop_assert_eq!(&gpd_fill(&cat, &iv, &sq)?, phi);
    }
}
