//! Assemblies as a realizer category, and the interval `𝐈₀ … 𝐈₃` inside it.

use std::sync::{Arc, Mutex};

use gral_core::groupoid::{chain2, chain3, cyclic, discrete, terminal, walking_iso, Grpd, Mor, Obj};
use gral_core::interval::{gpd_interval, IntervalData};
use gral_core::{enumerate, Caps, Error, GFunctor, Gpd, NatIso, RealizerCategory, Result};

use crate::asm::{find_realizer, product, Asm, Assembly, RealizedMorphism};
use crate::exp::{weak_exponential, WeakExp};

type ExpCache = Vec<(Asm, Asm, Arc<WeakExp>)>;

/// Partitioned groupoidal assemblies over finite groupoids. The exponential
/// is the weak exponential; `curry` uses the realizer carried by the map.
#[derive(Clone, Debug, Default)]
pub struct Pgasm {
    pub caps: Caps,
    exps: Arc<Mutex<ExpCache>>,
}

impl Pgasm {
    pub fn new(caps: Caps) -> Pgasm {
        Pgasm {
            caps,
            exps: Arc::default(),
        }
    }

    pub fn weak_exp(&self, x: &Asm, y: &Asm) -> Result<Arc<WeakExp>> {
        let mut cache = self.exps.lock().expect("cache lock");
        if let Some((_, _, w)) = cache.iter().find(|(a, b, _)| a.same(x) && b.same(y)) {
            return Ok(w.clone());
        }
        let w = Arc::new(weak_exponential(x, y, &self.caps)?);
        cache.push((x.clone(), y.clone(), w.clone()));
        Ok(w)
    }
}

/// `(G, G, id)` for a groupoid `G`.
pub fn discrete_assembly(g: &Grpd) -> Asm {
    Assembly::of(&GFunctor::identity(g))
}

/// A functor between groupoids as a map of identity-realized assemblies,
/// realized by itself.
pub fn lift_functor(f: &GFunctor) -> RealizedMorphism {
    let x = discrete_assembly(f.dom());
    let y = discrete_assembly(f.cod());
    RealizedMorphism::unchecked(&x, &y, f.clone(), f.clone(), NatIso::identity(f))
}

/// `𝐈ₖ = (Iₖ, 𝕀ₖ, id)` with every structure map realized by itself.
pub fn pgasm_interval() -> IntervalData<Pgasm> {
    let g = gpd_interval();
    IntervalData {
        obj: [
            discrete_assembly(&terminal()),
            discrete_assembly(&walking_iso()),
            discrete_assembly(&chain2()),
            discrete_assembly(&chain3()),
        ],
        zero: lift_functor(&g.zero),
        one: lift_functor(&g.one),
        star: lift_functor(&g.star),
        sigma: lift_functor(&g.sigma),
        two: lift_functor(&g.two),
        in0: lift_functor(&g.in0),
        in1: lift_functor(&g.in1),
        j0: lift_functor(&g.j0),
        j1: lift_functor(&g.j1),
    }
}

/// Realize `fun: 𝐈ₖ → X` by the constant map at the realizer `e0` of the
/// first endpoint, with `δ₀ = eps0` and `δₖ = ‖fun(0 → k)‖ δ₀`.
pub fn chain_realizer(src: &Asm, x: &Asm, fun: GFunctor, e0: Obj, eps0: Mor) -> Result<RealizedMorphism> {
    let c = &src.base;
    let d = GFunctor::constant(&src.rtype, &x.rtype, e0);
    let lhs = d.after(&src.rfun)?;
    let rhs = x.rfun.after(&fun)?;
    let eps = NatIso::from_fn(&lhs, &rhs, |k| {
        let along = fun.mor(c.hom(Obj(0), k)[0]);
        x.rtype.compose(x.rfun.mor(along), eps0)
    })?;
    RealizedMorphism::new(src, x, fun, d, eps)
}

fn check_standard(iv: &IntervalData<Pgasm>) -> Result<()> {
    let std = pgasm_interval();
    let ok = (0..4).all(|k| iv.obj[k].same(&std.obj[k]))
        && iv.in0 == std.in0
        && iv.in1 == std.in1
        && iv.j0 == std.j0
        && iv.j1 == std.j1;
    if ok {
        Ok(())
    } else {
        Err(Error::Capability("copair over a non-standard interval".into()))
    }
}

impl RealizerCategory for Pgasm {
    type Ob = Asm;
    type Map = RealizedMorphism;

    fn dom(&self, f: &RealizedMorphism) -> Asm {
        f.src.clone()
    }

    fn cod(&self, f: &RealizedMorphism) -> Asm {
        f.tgt.clone()
    }

    fn ob_eq(&self, a: &Asm, b: &Asm) -> bool {
        a.same(b)
    }

    fn identity(&self, a: &Asm) -> RealizedMorphism {
        RealizedMorphism::identity(a)
    }

    fn compose(&self, g: &RealizedMorphism, f: &RealizedMorphism) -> Result<RealizedMorphism> {
        g.after(f)
    }

    fn terminal(&self) -> Asm {
        Assembly::terminal()
    }

    fn to_terminal(&self, a: &Asm) -> RealizedMorphism {
        RealizedMorphism::to_terminal(a)
    }

    fn product(&self, a: &Asm, b: &Asm) -> Result<Asm> {
        Ok(product(a, b, &self.caps)?.asm)
    }

    fn fst(&self, a: &Asm, b: &Asm) -> Result<RealizedMorphism> {
        Ok(product(a, b, &self.caps)?.fst())
    }

    fn snd(&self, a: &Asm, b: &Asm) -> Result<RealizedMorphism> {
        Ok(product(a, b, &self.caps)?.snd())
    }

    fn pair(&self, f: &RealizedMorphism, g: &RealizedMorphism) -> Result<RealizedMorphism> {
        product(&f.tgt, &g.tgt, &self.caps)?.pair(f, g)
    }

    fn exponential(&self, a: &Asm, b: &Asm) -> Result<Asm> {
        Ok(self.weak_exp(a, b)?.asm.clone())
    }

    fn eval(&self, a: &Asm, b: &Asm) -> Result<RealizedMorphism> {
        Ok(self.weak_exp(a, b)?.ev(&self.caps)?.1)
    }

    fn curry(&self, f: &RealizedMorphism, z: &Asm, a: &Asm) -> Result<RealizedMorphism> {
        let za = product(z, a, &self.caps)?;
        self.weak_exp(a, &f.tgt)?.transpose(&za, f, &self.caps)
    }

    fn hom(&self, a: &Asm, b: &Asm) -> Result<Vec<RealizedMorphism>> {
        let mut out = Vec::new();
        for f in enumerate::functors(&a.base, &b.base, self.caps.max_morphisms)? {
            if let Some(m) = find_realizer(a, b, &f, &self.caps)? {
                out.push(m);
            }
        }
        Ok(out)
    }

    fn probes(&self) -> Vec<Asm> {
        let ab = vec!["a".to_string(), "b".to_string()];
        let z2 = cyclic(2, "z");
        vec![
            Assembly::terminal(),
            discrete_assembly(&walking_iso()),
            discrete_assembly(&z2),
            Assembly::chaotic(&discrete(&ab), &terminal(), Obj(0)),
            Assembly::chaotic(&z2, &walking_iso(), Obj(1)),
        ]
    }

    /// `[β, α]` realized by the constant map at the realizer of `α(0)`.
    fn copair2(&self, iv: &IntervalData<Pgasm>, beta: &RealizedMorphism, alpha: &RealizedMorphism) -> Result<RealizedMorphism> {
        check_standard(iv)?;
        let fun = Gpd::new(self.caps).copair2(&gpd_interval(), &beta.fun, &alpha.fun)?;
        chain_realizer(&iv.obj[2], &alpha.tgt, fun, alpha.e.ob(Obj(0)), alpha.eps.at(Obj(0)))
    }

    /// `[c, d]` realized by the constant map at the realizer of `d(0)`.
    fn copair3(&self, iv: &IntervalData<Pgasm>, c: &RealizedMorphism, d: &RealizedMorphism) -> Result<RealizedMorphism> {
        check_standard(iv)?;
        let fun = Gpd::new(self.caps).copair3(&gpd_interval(), &c.fun, &d.fun)?;
        chain_realizer(&iv.obj[3], &d.tgt, fun, d.e.ob(Obj(0)), d.eps.at(Obj(0)))
    }

    fn label(&self, f: &RealizedMorphism) -> String {
        Gpd::default().label(&f.fun)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gral_core::interval::check_cogroupoid;

    #[test]
    fn interval_is_a_cogroupoid() {
        let r = check_cogroupoid(&Pgasm::default(), &pgasm_interval());
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn copair_of_identity_paths_is_constant() {
        let cat = Pgasm::default();
        let iv = pgasm_interval();
        let x = discrete_assembly(&cyclic(2, "z"));
        let p = cat.constant(&iv.obj[1], &RealizedMorphism::point(&x, Obj(0))).unwrap();
        let h = cat.copair2(&iv, &p, &p).unwrap();
        assert!(h.is_valid());
        assert_eq!(h.fun, GFunctor::constant(&chain2(), &x.base, Obj(0)));
    }
}
