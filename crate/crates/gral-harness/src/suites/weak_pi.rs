use gral_core::enumerate;
use gral_pgasm::asm::{find_realizer, product};
use gral_pgasm::depprod::dependent_product;
use gral_pgasm::pathcat::{is_fibration, pullback_asm, Fibration};
use gral_pgasm::{Assembly, RealizedMorphism};

use super::{over_cap, Witness};
use crate::gen::Gen;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "weak-pi";

/// `G = π₁: Y × E → Y` and `F: Y → Z`, with `F` a map to the terminal
/// assembly, an identity or a projection.
pub(crate) fn instance(g: &mut Gen) -> Option<(Fibration, Fibration)> {
    let caps = g.caps;
    let y = g.assembly(1, 2);
    let f = match g.below(3) {
        0 => is_fibration(&RealizedMorphism::to_terminal(&y)).ok()?,
        1 => is_fibration(&RealizedMorphism::identity(&y)).ok()?,
        _ => {
            let e = g.assembly(1, 2);
            g.projection(&y, &e)?.1
        }
    };
    let y = f.map.src.clone();
    let e = if g.coin(0.5) { Assembly::terminal() } else { g.assembly(1, 2) };
    let ye = product(&y, &e, &caps).ok()?;
    let gf = is_fibration(&ye.fst()).ok()?;
    Some((gf, f))
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());
    let caps = cfg.caps();
    let need = cfg.count(20);
    let mut fib = Tally::new("pi-is-fibration", need);
    let mut over = Tally::new("ev-lies-over-y", need);
    let mut beta = Tally::new("beta-law", need);
    let mut k = 0;
    while beta.instances() < need || fib.instances() < need {
        k += 1;
        let Some((gf, f)) = instance(&mut g) else { continue };
        let Ok(dp) = dependent_product(&gf, &f, &caps) else { continue };
        let w = |name: &str| Witness::new(cfg, SUITE, name, k).map("F", &f.map).map("G", &gf.map);
        let ok = dp.fibration.map.is_valid()
            && dp.fibration.cleavage.is_normal()
            && is_fibration(&dp.fibration.map).is_ok();
        fib.record(ok, || w("pi-is-fibration").finish("Π_F(G) → Z is not a normal fibration"));
        let (pa, ev) = match dp.ev(&caps) {
            Ok(x) => x,
            Err(e) if over_cap(&e) => continue,
            Err(e) => {
                over.fail(e.to_string(), w("ev-lies-over-y").finish(e.to_string()).1);
                continue;
            }
        };
        let ok = ev.is_valid() && gf.map.fun.after(&ev.fun).is_ok_and(|x| x == pa.p1.fun);
        over.record(ok, || w("ev-lies-over-y").finish("G∘ev differs from the projection"));

        let z = f.map.tgt.clone();
        let wz = g.assembly(1, 2);
        let r = g.realized_map(&wz, &z).unwrap_or_else(|| RealizedMorphism::identity(&z));
        let Ok(fw) = pullback_asm(&f.map, &r, &caps) else { continue };
        let Ok(funs) = enumerate::functors_over(&fw.p1.fun, &gf.map.fun, caps.max_morphisms) else { continue };
        let sections: Vec<RealizedMorphism> = funs
            .iter()
            .filter_map(|fun| find_realizer(&fw.asm, &gf.map.src, fun, &caps).ok().flatten())
            .collect();
        if sections.is_empty() {
            continue;
        }
        let s = g.pick(&sections).clone();
        let res = (|| {
            let t = dp.transpose(&fw, &s)?;
            let ft = pa.universal(&fw.p1, &t.after(&fw.p2)?)?;
            Ok::<_, gral_core::Error>(
                t.is_valid() && dp.fibration.map.after(&t)? == r && ev.after(&ft)? == s,
            )
        })();
        beta.record(matches!(res, Ok(true)), || {
            w("beta-law").map("R", &r).map("S", &s).finish(format!("{res:?}"))
        });
    }
    vec![fib.finish(), over.finish(), beta.finish()]
}
