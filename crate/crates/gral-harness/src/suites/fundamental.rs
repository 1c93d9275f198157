use gral_core::construct::product_capped;
use gral_core::fundamental::{boundary_lemma, fundamental, gpd_pi_iso, pi_map};
use gral_core::groupoid::walking_iso;
use gral_core::{gpd_interval, GFunctor, Gpd, Homotopy};

use super::Witness;
use crate::gen::Gen;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "fundamental-groupoid";

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let cat = Gpd::new(cfg.caps());
    let iv = gpd_interval();
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());

    let mut iso = Tally::new("pi-iso", cfg.count(50));
    for k in 0..cfg.count(50) {
        let a = g.groupoid(2, 3);
        let res = fundamental(&cat, &iv, &a).and_then(|pi| {
            let (fwd, bwd) = gpd_pi_iso(&pi)?;
            Ok(fwd.is_valid()
                && bwd.is_valid()
                && bwd.after(&fwd)? == GFunctor::identity(&a)
                && fwd.after(&bwd)? == GFunctor::identity(&pi.grpd))
        });
        iso.record(matches!(res, Ok(true)), || {
            Witness::new(cfg, SUITE, "pi-iso", k)
                .groupoid("A", &a)
                .finish(format!("{res:?}"))
        });
    }

    let mut ident = Tally::new("pi-functor-identity", cfg.count(50));
    let mut comp = Tally::new("pi-functor-composition", cfg.count(50));
    let mut k = 0;
    while comp.instances() < cfg.count(50) {
        k += 1;
        let (a, b, c) = (g.groupoid(2, 2), g.groupoid(2, 2), g.groupoid(2, 2));
        let (Some(f), Some(h)) = (g.functor(&a, &b), g.functor(&b, &c)) else {
            continue;
        };
        let laws = (|| {
            let (pa, pb, pc) = (
                fundamental(&cat, &iv, &a)?,
                fundamental(&cat, &iv, &b)?,
                fundamental(&cat, &iv, &c)?,
            );
            let id = pi_map(&cat, &pa, &pa, &GFunctor::identity(&a))? == GFunctor::identity(&pa.grpd);
            let lhs = pi_map(&cat, &pa, &pc, &h.after(&f)?)?;
            let rhs = pi_map(&cat, &pb, &pc, &h)?.after(&pi_map(&cat, &pa, &pb, &f)?)?;
            Ok::<_, gral_core::Error>((id, lhs == rhs))
        })();
        let (i_ok, c_ok) = laws.as_ref().map_or((false, false), |&(i, c)| (i, c));
        let w = || {
            Witness::new(cfg, SUITE, "pi-functor", k)
                .groupoid("A", &a)
                .groupoid("B", &b)
                .groupoid("C", &c)
        };
        ident.record(i_ok, || w().finish(format!("{laws:?}")));
        comp.record(c_ok, || w().finish(format!("{laws:?}")));
    }

    let mut lemma = Tally::new("boundary-lemma", cfg.count(100));
    let mut k = 0;
    while lemma.instances() < cfg.count(100) {
        k += 1;
        let (a, b) = (g.groupoid(1, 2), g.groupoid(2, 2));
        let Ok(ai) = product_capped(&a, &walking_iso(), &cfg.caps()) else {
            continue;
        };
        let Some(body) = g.functor(&ai.grpd, &b) else {
            continue;
        };
        let Ok(pa) = fundamental(&cat, &iv, &a) else {
            continue;
        };
        let m = gral_core::Mor(g.below(pa.grpd.morphism_count()) as u32);
        let res = Homotopy::new(&cat, &iv, &a, body.clone())
            .and_then(|h| boundary_lemma(&cat, &iv, &h, pa.path(m)));
        let ok = matches!(&res, Ok([d, l, r]) if d == l && d == r);
        lemma.record(ok, || {
            Witness::new(cfg, SUITE, "boundary-lemma", k)
                .groupoid("A", &a)
                .functor("H", &body)
                .note("path", pa.grpd.morphism_id(m))
                .finish("composites through the boundary differ")
        });
    }

    vec![iso.finish(), ident.finish(), comp.finish(), lemma.finish()]
}
