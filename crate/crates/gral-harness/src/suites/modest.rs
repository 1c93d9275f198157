use gral_core::groupoid::{cyclic, discrete, terminal, Obj};
use gral_pgasm::category::discrete_assembly;
use gral_pgasm::depprod::{
    compose_fibrations, dependent_product, is_modest_fibration, nabla, non_modest_fibre, pullback_fibration,
    split,
};
use gral_pgasm::pathcat::{equivalence, is_fibration, Fibration};
use gral_pgasm::RealizedMorphism;

use super::weak_pi::instance;
use super::{over_cap, Witness};
use crate::gen::Gen;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "modest-closure";

fn modest(m: &Fibration) -> bool {
    matches!(is_modest_fibration(m), Ok(true))
}

fn why(m: &gral_core::Result<Fibration>) -> String {
    match m {
        Ok(f) => match non_modest_fibre(f) {
            Ok(Some((x, w))) => format!("fibre over {}: {w}", x.0),
            Ok(None) => "modest".into(),
            Err(e) => e.to_string(),
        },
        Err(e) => e.to_string(),
    }
}

fn modest_fibration(g: &mut Gen) -> Fibration {
    loop {
        let f = g.fibration(1, 2);
        if modest(&f) {
            return f;
        }
    }
}

/// An assembly whose realizers have no nontrivial automorphisms. Pulling
/// back along a map out of anything else adds loops to the fibres.
fn rigid_assembly(g: &mut Gen) -> gral_pgasm::Asm {
    loop {
        let w = g.assembly(1, 2);
        if w.base.objects().all(|o| {
            let a = w.rfun.ob(o);
            w.rtype.hom(a, a).len() == 1
        }) {
            return w;
        }
    }
}

fn modest_fibration_from(g: &mut Gen, y: &gral_pgasm::Asm) -> Option<Fibration> {
    (0..20).map(|_| g.fibration_from(y)).find(modest)
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());
    let caps = cfg.caps();
    let need = cfg.count(10);

    let mut comp = Tally::new("composition", need);
    let mut k = 0;
    while comp.instances() < need {
        k += 1;
        let f = modest_fibration(&mut g);
        let Some(h) = modest_fibration_from(&mut g, &f.map.tgt) else { continue };
        let c = compose_fibrations(&h, &f);
        comp.record(matches!(&c, Ok(c) if modest(c)), || {
            Witness::new(cfg, SUITE, "composition", k)
                .map("F", &f.map)
                .map("G", &h.map)
                .finish(why(&c))
        });
    }

    let mut pull = Tally::new("pullback-stability", need);
    let mut spl = Tally::new("split-replacement", need);
    let mut k = 0;
    while pull.instances() < need {
        k += 1;
        let m = modest_fibration(&mut g);
        let w = rigid_assembly(&mut g);
        let h = g
            .realized_map(&w, &m.map.tgt)
            .unwrap_or_else(|| RealizedMorphism::identity(&m.map.tgt));
        let p = pullback_fibration(&m, &h, &caps).map(|(_, f)| f);
        let s = split(&m, &caps);
        let s_eq = s.as_ref().map(|sp| equivalence(&sp.s, &caps));
        if matches!(&p, Err(e) if over_cap(e))
            || matches!(&s, Err(e) if over_cap(e))
            || matches!(&s_eq, Ok(Err(e)) if over_cap(e))
        {
            continue;
        }
        pull.record(matches!(&p, Ok(f) if modest(f)), || {
            Witness::new(cfg, SUITE, "pullback-stability", k)
                .map("M", &m.map)
                .map("H", &h)
                .finish(why(&p))
        });
        let ok = s.as_ref().is_ok_and(|sp| {
            modest(&sp.fibration)
                && sp.fibration.cleavage.is_normal()
                && matches!(&s_eq, Ok(Ok(Some(e))) if e.is_valid())
        });
        let s = s.map(|sp| sp.fibration);
        spl.record(ok, || {
            Witness::new(cfg, SUITE, "split-replacement", k)
                .map("M", &m.map)
                .finish(why(&s))
        });
    }

    let mut pi = Tally::new("dependent-product", need);
    let mut k = 0;
    while pi.instances() < need {
        k += 1;
        let Some((gf, f)) = instance(&mut g) else { continue };
        if !modest(&gf) {
            continue;
        }
        let Ok(dp) = dependent_product(&gf, &f, &caps) else { continue };
        pi.record(modest(&dp.fibration), || {
            Witness::new(cfg, SUITE, "dependent-product", k)
                .map("F", &f.map)
                .map("G", &gf.map)
                .finish(why(&Ok(dp.fibration.clone())))
        });
    }

    let mut loops = Tally::new("pullback-along-looped-realizer-is-not-modest", 1);
    let z2 = discrete_assembly(&cyclic(2, "z"));
    let one = discrete_assembly(&terminal());
    let looped = is_fibration(&RealizedMorphism::identity(&one))
        .map_err(|e| gral_core::Error::Structural(e.description))
        .and_then(|m| pullback_fibration(&m, &RealizedMorphism::to_terminal(&z2), &caps))
        .is_ok_and(|(_, f)| matches!(is_modest_fibration(&f), Ok(false)));
    loops.record(looped, || {
        Witness::new(cfg, SUITE, "pullback-along-looped-realizer-is-not-modest", 0)
            .assembly("W", &z2)
            .finish("the pullback of id_1 along Z2 → 1 was accepted as modest")
    });

    let mut fixture = Tally::new("non-modest-fixture-rejected", 1);
    let two = discrete(&["a".to_string(), "b".to_string()]);
    let rejected = nabla(&two, &terminal(), Obj(0))
        .ok()
        .and_then(|x| is_fibration(&RealizedMorphism::to_terminal(&x)).ok())
        .is_some_and(|f| matches!(is_modest_fibration(&f), Ok(false)));
    fixture.record(rejected, || {
        Witness::new(cfg, SUITE, "non-modest-fixture-rejected", 0)
            .groupoid("two", &two)
            .finish("∇2 → 1 was accepted as modest")
    });

    vec![comp.finish(), pull.finish(), spl.finish(), pi.finish(), loops.finish(), fixture.finish()]
}
