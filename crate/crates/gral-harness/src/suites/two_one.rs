use gral_core::{NatIso, Result};
use gral_pgasm::{RealizedMorphism, TwoCell};

use super::Witness;
use crate::gen::Gen;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "two-one-axioms";

/// `φ, ψ: F ⇒ G ⇒ H` on `X → Y` and `χ, χ': K ⇒ L ⇒ M` on `Y → Z`.
struct Config {
    f: RealizedMorphism,
    phi: TwoCell,
    psi: TwoCell,
    k: RealizedMorphism,
    chi: TwoCell,
    chi2: TwoCell,
}

fn chain(g: &mut Gen, f: &RealizedMorphism) -> Option<(TwoCell, TwoCell)> {
    let caps = g.caps;
    let (gm, n1) = g.iso_map(f)?;
    let (hm, n2) = g.iso_map(&gm)?;
    let a = TwoCell::canonical(f, &gm, &n1, &caps).ok()?;
    let b = TwoCell::canonical(&gm, &hm, &n2, &caps).ok()?;
    Some((a, b))
}

fn config(g: &mut Gen) -> Option<Config> {
    let (x, y, z) = (g.assembly(1, 2), g.assembly(2, 2), g.assembly(1, 2));
    let f = g.realized_map(&x, &y)?;
    let k = g.realized_map(&y, &z)?;
    let (phi, psi) = chain(g, &f)?;
    let (chi, chi2) = chain(g, &k)?;
    Some(Config { f, phi, psi, k, chi, chi2 })
}

fn horizontal_natiso(chi: &TwoCell, phi: &TwoCell) -> Result<NatIso> {
    let (c, p) = (chi.natiso()?, phi.natiso()?);
    let z = &chi.tgt.tgt.base;
    let src = chi.src.fun.after(&phi.src.fun)?;
    let tgt = chi.tgt.fun.after(&phi.tgt.fun)?;
    NatIso::from_fn(&src, &tgt, |x| z.compose(c.at(phi.tgt.fun.ob(x)), chi.src.fun.mor(p.at(x))))
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());
    let caps = cfg.caps();
    let need = cfg.count(100);
    let names = [
        "vertical-composite",
        "horizontal-composite",
        "interchange",
        "identity-cell",
        "inverse-cell",
    ];
    let mut ts: Vec<Tally> = names.iter().map(|n| Tally::new(n, need)).collect();
    let mut k = 0;
    while ts[0].instances() < need {
        k += 1;
        let Some(c) = config(&mut g) else { continue };
        let witness = |name: &str| {
            Witness::new(cfg, SUITE, name, k)
                .map("F", &c.f)
                .map("G", &c.phi.tgt)
                .map("H", &c.psi.tgt)
                .map("K", &c.k)
                .map("L", &c.chi.tgt)
                .map("M", &c.chi2.tgt)
        };

        let vert = (|| {
            let v = c.psi.vertical(&c.phi)?;
            Ok::<_, gral_core::Error>(v.is_valid() && v.natiso()? == c.psi.natiso()?.after(&c.phi.natiso()?)?)
        })();
        ts[0].record(matches!(vert, Ok(true)), || witness(names[0]).finish(format!("{vert:?}")));

        let horiz = (|| {
            let h = c.chi.horizontal(&c.phi)?;
            Ok::<_, gral_core::Error>(h.is_valid() && h.natiso()? == horizontal_natiso(&c.chi, &c.phi)?)
        })();
        ts[1].record(matches!(horiz, Ok(true)), || witness(names[1]).finish(format!("{horiz:?}")));

        let inter = (|| {
            let lhs = c.chi2.vertical(&c.chi)?.horizontal(&c.psi.vertical(&c.phi)?)?;
            let rhs = c.chi2.horizontal(&c.psi)?.vertical(&c.chi.horizontal(&c.phi)?)?;
            Ok::<_, gral_core::Error>(lhs.is_valid() && rhs.is_valid() && lhs.natiso()? == rhs.natiso()?)
        })();
        ts[2].record(matches!(inter, Ok(true)), || witness(names[2]).finish(format!("{inter:?}")));

        let ident = (|| {
            let id = TwoCell::identity(&c.phi.tgt, &caps)?;
            let id0 = TwoCell::identity(&c.f, &caps)?;
            Ok::<_, gral_core::Error>(
                id.is_valid()
                    && id.vertical(&c.phi)?.natiso()? == c.phi.natiso()?
                    && c.phi.vertical(&id0)?.natiso()? == c.phi.natiso()?,
            )
        })();
        ts[3].record(matches!(ident, Ok(true)), || witness(names[3]).finish(format!("{ident:?}")));

        let inv = (|| {
            let i = c.phi.inverse()?;
            Ok::<_, gral_core::Error>(
                i.is_valid()
                    && i.vertical(&c.phi)?.natiso()? == NatIso::identity(&c.f.fun)
                    && c.phi.vertical(&i)?.natiso()? == NatIso::identity(&c.phi.tgt.fun),
            )
        })();
        ts[4].record(matches!(inv, Ok(true)), || witness(names[4]).finish(format!("{inv:?}")));
    }
    ts.into_iter().map(Tally::finish).collect()
}
