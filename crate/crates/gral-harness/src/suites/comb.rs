use gral_comb::asm::{bridge_round_trip, unit_retype};
use gral_comb::poly::check_bracket;
use gral_comb::untyped::{self, uapp, uapps, UTerm};
use gral_comb::{DiscreteAssembly, DiscreteMorphism, RCat, Tca, Term, Ty};

use super::Witness;
use crate::gen::Gen;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "comb-alg";

fn o() -> Ty {
    Ty::base("o")
}

fn equations(cfg: &SuiteConfig, name: &str, eqs: &[gral_comb::EquationCheck]) -> Check {
    let mut t = Tally::new(name, 1);
    for (k, e) in eqs.iter().enumerate() {
        t.record(e.holds, || {
            Witness::new(cfg, SUITE, name, k)
                .note("equation", &e.name)
                .note("lhs", &e.lhs)
                .note("rhs", &e.rhs)
                .finish(format!("{} fails", e.name))
        });
    }
    t.finish()
}

fn sample_assembly(g: &mut Gen, r: &RCat) -> DiscreteAssembly {
    let ty = if g.coin(0.5) { o() } else { Ty::arrow(o(), o()) };
    let carrier = r.carrier(&ty);
    let n = 1 + g.below(4);
    let realizers = (0..n).map(|_| g.pick(carrier).clone()).collect();
    DiscreteAssembly::new(&r.tca, ty, realizers).expect("carrier terms are typed")
}

/// Maps `x → y` tracked by some computable function, at most `max`.
fn tracked_maps(g: &mut Gen, r: &RCat, x: &DiscreteAssembly, y: &DiscreteAssembly, max: usize) -> Vec<DiscreteMorphism> {
    let mut out = Vec::new();
    let mut hom = r.hom(&x.rtype, &y.rtype);
    while !hom.is_empty() && out.len() < max {
        let c = hom.swap_remove(g.below(hom.len()));
        let fun: Option<Vec<usize>> = x
            .realizers
            .iter()
            .map(|t| {
                let img = &r.carrier(&y.rtype)[c.table[r.index_of(&x.rtype, t)?]];
                y.realizers.iter().position(|s| s == img)
            })
            .collect();
        if let Some(fun) = fun {
            out.push(DiscreteMorphism { fun, realizer: c.witness.clone() });
        }
    }
    out
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());
    let tca = Tca::standard();
    let unit = tca.unit_augmentation();
    let idx = [o(), Ty::arrow(o(), o())];
    let mut out = Vec::new();

    match tca.fragment(&idx, 3, 5000) {
        Ok(frag) => out.push(equations(cfg, "k-s-equations", &tca.ks_equations(&idx, &frag, 2))),
        Err(e) => out.push(Tally::new("k-s-equations", 1).finish_with_error(e.to_string())),
    }
    let r = match RCat::new(&unit, &idx, 3, 5000) {
        Ok(r) => r,
        Err(e) => {
            out.push(Tally::new("unit-table", 1).finish_with_error(e.to_string()));
            return out;
        }
    };
    match unit.unit_table_checks(&idx, &r.frag, 2) {
        Ok(eqs) => out.push(equations(cfg, "unit-table", &eqs)),
        Err(e) => out.push(Tally::new("unit-table", 1).finish_with_error(e.to_string())),
    }

    let mut br = Tally::new("bracket-substitution", cfg.count(200));
    let arg_types = [o(), Ty::arrow(o(), o()), Ty::Unit];
    for k in 0..cfg.count(200) {
        let xty = g.pick(&arg_types).clone();
        let ty = g.pick(&idx).clone();
        let vars = [("x".to_string(), xty.clone()), ("y".to_string(), o())];
        let t = g.polynomial(&unit, &ty, 4, &vars, &arg_types);
        let a = g.leaf(&unit, &xty);
        let res = check_bracket(&unit, &t, "x", &xty, &a);
        br.record(matches!(&res, Ok(c) if c.holds()), || {
            Witness::new(cfg, SUITE, "bracket-substitution", k)
                .note("term", &t)
                .note("variable", format!("x:{xty}"))
                .note("argument", &a)
                .finish(format!("{res:?}"))
        });
    }
    out.push(br.finish());

    let mut bridge = Tally::new("r-of-a-round-trip", cfg.count(10));
    let mut retype = Tally::new("unit-retype-round-trip", cfg.count(10));
    let mut modest = Tally::new("modesty-agrees-with-groupoid-assembly", cfg.count(10));
    for k in 0..cfg.count(10) {
        let (x, y) = (sample_assembly(&mut g, &r), sample_assembly(&mut g, &r));
        let maps = tracked_maps(&mut g, &r, &x, &y, 3);
        let rep = bridge_round_trip(&r, &x, &y, &maps);
        let show = |d: &DiscreteAssembly| {
            let rs: Vec<String> = d.realizers.iter().map(Term::to_string).collect();
            format!("{}: [{}]", d.rtype, rs.join(", "))
        };
        bridge.record(matches!(&rep, Ok(b) if b.holds()), || {
            Witness::new(cfg, SUITE, "r-of-a-round-trip", k)
                .note("X", show(&x))
                .note("Y", show(&y))
                .finish(format!("{rep:?}"))
        });
        for d in [&x, &y] {
            modest.record(d.is_modest() == d.to_groupoid_assembly().is_modest(), || {
                Witness::new(cfg, SUITE, "modesty-agrees-with-groupoid-assembly", k)
                    .note("X", show(d))
                    .finish("modesty differs")
            });
        }
        let n = 1 + g.below(4);
        let ux = DiscreteAssembly::new(&unit, Ty::Unit, vec![Term::Star; n]).expect("unit assembly");
        let a = g.pick(&idx).clone();
        let a0 = g.leaf(&unit, &a);
        let u = unit_retype(&unit, &ux, &a, &a0);
        retype.record(matches!(&u, Ok(u) if u.verify(&unit).is_empty()), || {
            Witness::new(cfg, SUITE, "unit-retype-round-trip", k)
                .note("size", n)
                .note("point", &a0)
                .finish(format!("{:?}", u.map(|u| u.verify(&unit))))
        });
    }
    out.extend([bridge, retype, modest].map(Tally::finish));
    out.push(untyped_equations(cfg, &mut g));
    out
}

/// `k a b = a` and `s f g a = f a (g a)` in `U = U → U`, sampled from the
/// normalizing fragment; instances leaving the fragment are skipped.
fn untyped_equations(cfg: &SuiteConfig, g: &mut Gen) -> Check {
    const FUEL: usize = 200;
    let name = "untyped-k-s-equations";
    let frag = match untyped::fragment(&["a", "b"], 4, FUEL, 5000) {
        Ok(f) => f,
        Err(e) => return Tally::new(name, 1).finish_with_error(e.to_string()),
    };
    let mut t = Tally::new(name, cfg.count(50));
    let mut k = 0;
    while t.instances() < cfg.count(50) && k < 100 * cfg.count(50) {
        k += 1;
        let (f, h, a) = (g.pick(&frag).clone(), g.pick(&frag).clone(), g.pick(&frag).clone());
        let (lhs, rhs) = if g.coin(0.5) {
            (uapps(UTerm::K, [f.clone(), h]), f)
        } else {
            (uapps(UTerm::S, [f.clone(), h.clone(), a.clone()]), uapp(uapp(f, a.clone()), uapp(h, a)))
        };
        let (Ok(l), Ok(r)) = (untyped::normalize(&lhs, FUEL), untyped::normalize(&rhs, FUEL)) else { continue };
        t.record(l == r, || {
            Witness::new(cfg, SUITE, name, k)
                .note("lhs", &lhs)
                .note("rhs", &rhs)
                .finish(format!("{l} differs from {r}"))
        });
    }
    t.finish()
}
