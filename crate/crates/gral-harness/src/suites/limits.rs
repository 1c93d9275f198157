use gral_pgasm::pathcat::{pseudopullback_asm, pullback_asm};
use gral_pgasm::{RealizedMorphism, TwoCell};

use super::Witness;
use crate::gen::Gen;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "finite-limits";

/// A cospan `X → Z ← Y`.
fn cospan(g: &mut Gen) -> Option<(RealizedMorphism, RealizedMorphism)> {
    let z = g.assembly(1, 2);
    let (x, y) = (g.assembly(1, 2), g.assembly(1, 2));
    Some((g.realized_map(&x, &z)?, g.realized_map(&y, &z)?))
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());
    let caps = cfg.caps();
    let need = cfg.count(20);

    let mut pb_t = Tally::new("pullback-universal", need);
    let mut k = 0;
    while pb_t.instances() < need {
        k += 1;
        let Some((f, h)) = cospan(&mut g) else { continue };
        let Ok(pb) = pullback_asm(&f, &h, &caps) else { continue };
        if pb.asm.base.object_count() == 0 {
            continue;
        }
        // A cone through a random map into the pullback.
        let w = g.assembly(1, 2);
        let Some(u) = g.realized_map(&w, &pb.asm) else { continue };
        let res = (|| {
            let (s, t) = (pb.p1.after(&u)?, pb.p2.after(&u)?);
            let m = pb.universal(&s, &t)?;
            let n = pb.count_factorisations(&s.fun, &t.fun, &caps)?;
            Ok::<_, gral_core::Error>(
                m.is_valid() && pb.p1.after(&m)? == s && pb.p2.after(&m)? == t && m == u && n == 1,
            )
        })();
        if matches!(&res, Err(e) if super::over_cap(e)) {
            continue;
        }
        pb_t.record(matches!(res, Ok(true)), || {
            Witness::new(cfg, SUITE, "pullback-universal", k)
                .map("F", &f)
                .map("G", &h)
                .map("U", &u)
                .finish(format!("{res:?}"))
        });
    }

    let mut pp_t = Tally::new("pseudopullback-universal", need);
    let mut k = 0;
    while pp_t.instances() < need {
        k += 1;
        let Some((f, h)) = cospan(&mut g) else { continue };
        let w = g.assembly(1, 2);
        let (Some(s), Some(t)) = (g.realized_map(&w, &f.src), g.realized_map(&w, &h.src)) else { continue };
        let (Ok(fs), Ok(ht)) = (f.after(&s), h.after(&t)) else { continue };
        let Some(psi) = g.natiso(&fs.fun, &ht.fun) else { continue };
        let Ok(pp) = pseudopullback_asm(&f, &h, &caps) else { continue };
        let res = (|| {
            let cell = TwoCell::canonical(&fs, &ht, &psi, &caps)?;
            let m = pp.universal(&s, &t, &cell)?;
            let n = pp.count_factorisations(&s.fun, &t.fun, &psi, &caps)?;
            Ok::<_, gral_core::Error>(
                m.is_valid() && cell.is_valid() && pp.p1.after(&m)? == s && pp.p2.after(&m)? == t && n == 1,
            )
        })();
        if matches!(&res, Err(e) if super::over_cap(e)) {
            continue;
        }
        pp_t.record(matches!(res, Ok(true)), || {
            Witness::new(cfg, SUITE, "pseudopullback-universal", k)
                .map("F", &f)
                .map("G", &h)
                .map("S", &s)
                .map("T", &t)
                .finish(format!("{res:?}"))
        });
    }

    vec![pb_t.finish(), pp_t.finish()]
}
