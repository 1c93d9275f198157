use gral_core::construct::isofibration_cleavage;
use gral_pgasm::asm::product;
use gral_pgasm::depprod::{compose_fibrations, pullback_fibration};
use gral_pgasm::pathcat::{
    equivalence, is_fibration, path_object, pc7_section, pc8_pseudoinverse, pullback_map, Fibration,
};
use gral_pgasm::{Asm, RealizedMorphism};

use super::Witness;
use crate::gen::{is_split, Gen};
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "path-axioms";

fn bijective(m: &RealizedMorphism) -> bool {
    let f = &m.fun;
    let mut seen = vec![false; f.cod().morphism_count()];
    f.dom().object_count() == f.cod().object_count()
        && f.dom().morphism_count() == f.cod().morphism_count()
        && f.mmap().iter().all(|t| !std::mem::replace(&mut seen[t.idx()], true))
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());
    let caps = cfg.caps();
    let assemblies: Vec<Asm> = std::iter::repeat_with(|| g.assembly(1, 2))
        .filter(|x| path_object(x, &caps).is_ok())
        .take(cfg.count(20))
        .collect();
    let mut fibrations: Vec<Fibration> = (0..cfg.count(30)).map(|_| g.fibration(1, 2)).collect();
    if cfg.inject_fault {
        let x = assemblies[0].clone();
        let k = g.below(fibrations.len());
        fibrations[k] = g.broken_projection(&x).expect("fault fixture");
    }
    let mut out = Vec::new();

    let mut iso_fib = Tally::new("pc1-isomorphisms-are-fibrations", assemblies.len());
    let mut iso_eq = Tally::new("pc4-isomorphisms-are-equivalences", assemblies.len());
    let mut term = Tally::new("pc3-maps-to-terminal-are-fibrations", assemblies.len());
    let mut r_eq = Tally::new("pc6-r-is-equivalence", assemblies.len());
    let mut diag = Tally::new("pc6-st-after-r-is-diagonal", assemblies.len());
    let mut st_fib = Tally::new("pc6-st-is-fibration", assemblies.len());
    for (k, x) in assemblies.iter().enumerate() {
        let w = |name: &str| Witness::new(cfg, SUITE, name, k).assembly("X", x);
        let isos: Vec<RealizedMorphism> = g.endomaps(x).into_iter().filter(bijective).collect();
        let iso = g.pick(&isos).clone();
        iso_fib.record(is_fibration(&iso).is_ok(), || w("pc1-isomorphisms-are-fibrations").map("F", &iso).finish("not an isofibration"));
        let eq = equivalence(&iso, &caps);
        iso_eq.record(matches!(&eq, Ok(Some(e)) if e.is_valid()), || {
            w("pc4-isomorphisms-are-equivalences").map("F", &iso).finish(format!("{:?}", eq.as_ref().err()))
        });
        term.record(is_fibration(&RealizedMorphism::to_terminal(x)).is_ok(), || {
            w("pc3-maps-to-terminal-are-fibrations").finish("X → 1 has no cleavage")
        });
        match path_object(x, &caps) {
            Ok(po) => {
                let d = po
                    .xx
                    .pair(&RealizedMorphism::identity(x), &RealizedMorphism::identity(x))
                    .and_then(|d| Ok(po.st.after(&po.r)? == d));
                diag.record(matches!(d, Ok(true)), || w("pc6-st-after-r-is-diagonal").finish(format!("{d:?}")));
                let e = po.equivalence(&caps);
                r_eq.record(matches!(&e, Ok(e) if e.is_valid()), || {
                    w("pc6-r-is-equivalence").finish(format!("{:?}", e.as_ref().map(|e| e.validate())))
                });
                let ok = po.st.is_valid() && po.r.is_valid() && po.fibration.cleavage.is_normal();
                st_fib.record(ok, || w("pc6-st-is-fibration").finish("path fibration invalid or not normal"));
            }
            Err(e) => {
                for t in [&mut diag, &mut r_eq, &mut st_fib] {
                    t.fail(e.to_string(), w("pc6").finish(e.to_string()).1);
                }
            }
        }
    }
    out.extend([iso_fib, iso_eq, term, r_eq, diag, st_fib].map(Tally::finish));

    let mut comp = Tally::new("pc1-fibrations-compose", fibrations.len());
    let mut pull = Tally::new("pc2-pullbacks-of-fibrations", fibrations.len());
    let mut split = Tally::new("cleavage-split", fibrations.len());
    for (k, f) in fibrations.iter().enumerate() {
        let w = |name: &str| Witness::new(cfg, SUITE, name, k).map("F", &f.map);
        split.record(is_split(f), || {
            w("cleavage-split").finish("chosen lifts are not normal and functorial")
        });
        let h = g.fibration_from(&f.map.tgt);
        let c = compose_fibrations(&h, f);
        let ok = matches!(&c, Ok(c) if c.map.is_valid() && isofibration_cleavage(&c.map.fun).is_ok());
        comp.record(ok, || w("pc1-fibrations-compose").map("G", &h.map).finish(format!("{:?}", c.err())));
        let wa = g.assembly(1, 2);
        let along = g
            .realized_map(&wa, &f.map.tgt)
            .unwrap_or_else(|| RealizedMorphism::identity(&f.map.tgt));
        let p = pullback_fibration(f, &along, &caps);
        let ok = matches!(&p, Ok((pa, fib)) if pa.asm.base.validate().is_valid()
            && fib.map.is_valid() && is_fibration(&fib.map).is_ok());
        pull.record(ok, || w("pc2-pullbacks-of-fibrations").map("H", &along).finish(format!("{:?}", p.err())));
    }
    out.extend([comp, pull, split].map(Tally::finish));

    let mut six = Tally::new("pc5-two-out-of-six", cfg.count(20));
    for k in 0..cfg.count(20) * 100 {
        if six.instances() >= cfg.count(20) {
            break;
        }
        let x = g.assembly(1, 2);
        let ends = g.endomaps(&x);
        let (f, gm, h) = (g.pick(&ends).clone(), g.pick(&ends).clone(), g.pick(&ends).clone());
        let is_eq = |m: &RealizedMorphism| matches!(equivalence(m, &caps), Ok(Some(e)) if e.is_valid());
        let (Ok(gf), Ok(hg)) = (gm.after(&f), h.after(&gm)) else { continue };
        if !(is_eq(&gf) && is_eq(&hg)) {
            continue;
        }
        let hgf = h.after(&gf).expect("composable");
        let ok = is_eq(&f) && is_eq(&gm) && is_eq(&h) && is_eq(&hgf);
        six.record(ok, || {
            Witness::new(cfg, SUITE, "pc5-two-out-of-six", k)
                .map("F", &f)
                .map("G", &gm)
                .map("H", &h)
                .finish("hypotheses hold but a conclusion fails")
        });
    }
    out.push(six.finish());

    let mut sec = Tally::new("pc7-section", cfg.count(20));
    let mut pc8 = Tally::new("pc8-pullback-pseudoinverse", cfg.count(20));
    let mut k = 0;
    while sec.instances() < cfg.count(20) || pc8.instances() < cfg.count(20) {
        k += 1;
        let (f, eq) = g.acyclic_fibration(1, 2);
        let w = |name: &str| Witness::new(cfg, SUITE, name, k).map("F", &f.map);
        let s = pc7_section(&f, &eq);
        let ok = matches!(&s, Ok(s) if s.is_valid()
            && f.map.after(s).is_ok_and(|fs| fs == RealizedMorphism::identity(&f.map.tgt)));
        sec.record(ok, || w("pc7-section").finish(format!("{:?}", s.err())));

        let wx = g.assembly(1, 2);
        let along = g
            .realized_map(&wx, &f.map.tgt)
            .unwrap_or_else(|| RealizedMorphism::identity(&f.map.tgt));
        let x = along.src.clone();
        let res = pc8_pseudoinverse(&f, &eq, &along, &caps).and_then(|p| {
            let p1 = &p.pullback.p1;
            let back = p1.after(&p.section)? == RealizedMorphism::identity(&x);
            let sigma = p.sigma.is_valid()
                && p.sigma.src == RealizedMorphism::identity(&p.pullback.asm)
                && p.sigma.tgt == p.section.after(p1)?;
            let acyclic = is_fibration(p1).is_ok() && matches!(equivalence(p1, &caps)?, Some(e) if e.is_valid());
            Ok((back, sigma, acyclic))
        });
        if matches!(&res, Err(e) if super::over_cap(e)) {
            continue;
        }
        pc8.record(matches!(res, Ok((true, true, true))), || {
            w("pc8-pullback-pseudoinverse").map("H", &along).finish(format!("(section, sigma, acyclic) = {res:?}"))
        });
    }
    out.extend([sec, pc8].map(Tally::finish));

    let mut brown = Tally::new("brown-lemma", cfg.count(10));
    for k in 0..cfg.count(10) * 50 {
        if brown.instances() >= cfg.count(10) {
            break;
        }
        let x = g.assembly(1, 2);
        let (e1, e2) = (g.assembly(1, 2), g.assembly(1, 2));
        let (Ok(a), Ok(b)) = (product(&x, &e1, &caps), product(&x, &e2, &caps)) else { continue };
        let Some(kmap) = g.realized_map(&e1, &e2) else { continue };
        let Ok(h) = b.times(&a, &RealizedMorphism::identity(&x), &kmap) else { continue };
        let y = g.assembly(1, 2);
        let Some(f) = g.realized_map(&y, &x) else { continue };
        let h_fib = is_fibration(&h).is_ok();
        let h_eq = matches!(equivalence(&h, &caps), Ok(Some(_)));
        if !h_fib && !h_eq {
            continue;
        }
        let res = pullback_map(&f, &a.fst(), &b.fst(), &h, &caps).and_then(|(_, _, m)| {
            let fib = !h_fib || is_fibration(&m).is_ok();
            let eq = !h_eq || matches!(equivalence(&m, &caps)?, Some(e) if e.is_valid());
            Ok(m.is_valid() && fib && eq)
        });
        if matches!(res, Err(gral_core::Error::SizeCap { .. })) {
            continue;
        }
        brown.record(matches!(res, Ok(true)), || {
            Witness::new(cfg, SUITE, "brown-lemma", k)
                .map("F", &f)
                .map("K", &kmap)
                .assembly("X", &x)
                .note("fibration", h_fib)
                .note("equivalence", h_eq)
                .finish(format!("{res:?}"))
        });
    }
    out.push(brown.finish());
    out
}

