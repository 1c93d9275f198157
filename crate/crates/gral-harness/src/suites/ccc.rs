use gral_core::enumerate::{self, FunctorFilter};
use gral_core::groupoid::{terminal, Mor, Obj};
use gral_pgasm::asm::product;
use gral_pgasm::{weak_exponential, Assembly, RealizedMorphism};

use super::Witness;
use crate::gen::Gen;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "pgasm-ccc";

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());
    let caps = cfg.caps();

    let mut term = Tally::new("terminal-universal", cfg.count(20));
    for k in 0..cfg.count(20) {
        let x = g.assembly(2, 3);
        let m = RealizedMorphism::to_terminal(&x);
        let maps = enumerate::functors(&x.base, &terminal(), caps.max_morphisms).map(|v| v.len());
        let ok = m.is_valid() && m.tgt.same(&Assembly::terminal()) && matches!(maps, Ok(1));
        term.record(ok, || {
            Witness::new(cfg, SUITE, "terminal-universal", k)
                .assembly("X", &x)
                .finish(format!("{maps:?} maps to 1, realizer valid: {}", m.is_valid()))
        });
    }

    let mut prod = Tally::new("product-universal", cfg.count(20));
    let mut k = 0;
    while prod.instances() < cfg.count(20) {
        k += 1;
        let (w, x, y) = (g.assembly(1, 2), g.assembly(1, 2), g.assembly(1, 2));
        let (Some(f), Some(h)) = (g.realized_map(&w, &x), g.realized_map(&w, &y)) else { continue };
        let Ok(p) = product(&x, &y, &caps) else { continue };
        let res = (|| {
            let u = p.pair(&f, &h)?;
            let obj = |o: Obj, t: Obj| p.base.split_obj(t) == (f.fun.ob(o), h.fun.ob(o));
            let mor = |m: Mor, t: Mor| p.base.split_mor(t) == (f.fun.mor(m), h.fun.mor(m));
            let filter = FunctorFilter { obj: Some(&obj), mor: Some(&mor) };
            let n = enumerate::functors_filtered(&w.base, &p.base.grpd, filter, caps.max_morphisms)?.len();
            Ok::<_, gral_core::Error>(u.is_valid() && p.fst().after(&u)? == f && p.snd().after(&u)? == h && n == 1)
        })();
        if matches!(&res, Err(e) if super::over_cap(e)) {
            continue;
        }
        prod.record(matches!(res, Ok(true)), || {
            Witness::new(cfg, SUITE, "product-universal", k)
                .map("F", &f)
                .map("G", &h)
                .finish(format!("{res:?}"))
        });
    }

    let mut beta = Tally::new("exponential-beta", cfg.count(20));
    let mut k = 0;
    while beta.instances() < cfg.count(20) {
        k += 1;
        let (z, x, y) = (g.assembly(1, 2), g.assembly(1, 2), g.assembly(1, 2));
        let Ok(w) = weak_exponential(&x, &y, &caps) else { continue };
        let Ok(zx) = product(&z, &x, &caps) else { continue };
        let Some(km) = g.realized_map(&zx.asm, &y) else { continue };
        let res = (|| {
            let (ex, ev) = w.ev(&caps)?;
            let kt = w.transpose(&zx, &km, &caps)?;
            let back = ev.after(&ex.times(&zx, &kt, &RealizedMorphism::identity(&x))?)?;
            Ok::<_, gral_core::Error>(ev.is_valid() && kt.is_valid() && back == km)
        })();
        if matches!(&res, Err(e) if super::over_cap(e)) {
            continue;
        }
        beta.record(matches!(res, Ok(true)), || {
            Witness::new(cfg, SUITE, "exponential-beta", k)
                .assembly("Z", &z)
                .map("K", &km)
                .finish(format!("{res:?}"))
        });
    }

    let mut modest = Tally::new("exponential-preserves-modesty", cfg.count(10));
    let mut k = 0;
    while modest.instances() < cfg.count(10) {
        k += 1;
        let (x, y) = (g.assembly(1, 2), g.modest_assembly(1, 2));
        let Ok(w) = weak_exponential(&x, &y, &caps) else { continue };
        modest.record(w.asm.is_modest(), || {
            Witness::new(cfg, SUITE, "exponential-preserves-modesty", k)
                .assembly("X", &x)
                .assembly("Y", &y)
                .finish(w.asm.modesty().to_string())
        });
    }

    vec![term.finish(), prod.finish(), beta.finish(), modest.finish()]
}
