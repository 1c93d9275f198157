//! The weak exponential `Real(Yˣ)`, evaluation and transposition.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use gral_core::construct::{exponential, product_capped, Exponential};
use gral_core::enumerate;
use gral_core::groupoid::{FinGroupoid, Mor, Morphism, Obj};
use gral_core::{Caps, Error, GFunctor, NatIso, Result};

use crate::asm::{product, Asm, Assembly, ProductAsm, RealizedMorphism};

/// An object `(F, e, ε)` of `Real(Yˣ)` with `(e, ε) ⊩ F`.
#[derive(Clone, Debug)]
pub struct ExpObj {
    pub fun: GFunctor,
    pub e: Obj,
    pub eps: NatIso,
}

/// A morphism `(ψ, f)`; the filler `ζ` is determined by its boundary.
#[derive(Clone, Debug)]
pub struct ExpMor {
    pub psi: NatIso,
    pub f: Mor,
}

#[derive(Clone, Debug)]
pub struct WeakExp {
    pub asm: Asm,
    pub x: Asm,
    pub y: Asm,
    pub real: Arc<Exponential>,
    objs: Vec<ExpObj>,
    mors: Vec<ExpMor>,
    obj_index: FxHashMap<(GFunctor, Obj, Vec<Mor>), Obj>,
    mor_index: FxHashMap<(Obj, Obj, Vec<Mor>, Mor), Mor>,
}

/// `Real(Yˣ)` with realizer type `B^A`.
pub fn weak_exponential(x: &Asm, y: &Asm, caps: &Caps) -> Result<WeakExp> {
    let real = exponential(&x.rtype, &y.rtype, caps)?;
    let b = &y.rtype;
    let mut objs = Vec::new();
    for fun in enumerate::functors(&x.base, &y.base, caps.max_morphisms)? {
        let target = y.rfun.after(&fun)?;
        for (k, e) in real.functors().iter().enumerate() {
            let src = e.after(&x.rfun)?;
            for eps in enumerate::natisos(&src, &target, caps.max_morphisms)? {
                objs.push(ExpObj {
                    fun: fun.clone(),
                    e: Obj(k as u32),
                    eps,
                });
                caps.check("weak exponential", objs.len(), 0)?;
            }
        }
    }
    let mut mors = Vec::new();
    let mut ends = Vec::new();
    for (s, o1) in objs.iter().enumerate() {
        for (t, o2) in objs.iter().enumerate() {
            for &f in real.grpd.hom(o1.e, o2.e) {
                let n = real.natiso(f);
                let required = |xo: Obj| {
                    let ra = x.rfun.ob(xo);
                    b.compose_path(&[b.inv(o1.eps.at(xo)), n.at(ra), o2.eps.at(xo)])
                };
                let ok = |xo: Obj, m: Mor| y.rfun.mor(m) == required(xo);
                for psi in enumerate::natisos_filtered(&o1.fun, &o2.fun, &ok, caps.max_morphisms)? {
                    mors.push(ExpMor { psi, f });
                    ends.push((Obj(s as u32), Obj(t as u32)));
                    caps.check("weak exponential", objs.len(), mors.len())?;
                }
            }
        }
    }
    let obj_index: FxHashMap<_, _> = objs
        .iter()
        .enumerate()
        .map(|(k, o)| ((o.fun.clone(), o.e, o.eps.comps().to_vec()), Obj(k as u32)))
        .collect();
    let mor_index: FxHashMap<_, _> = mors
        .iter()
        .zip(&ends)
        .enumerate()
        .map(|(k, (m, &(s, t)))| ((s, t, m.psi.comps().to_vec(), m.f), Mor(k as u32)))
        .collect();
    let find = |s: Obj, t: Obj, psi: &NatIso, f: Mor| -> Mor {
        mor_index[&(s, t, psi.comps().to_vec(), f)]
    };
    let identity: Vec<Mor> = objs
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let s = Obj(k as u32);
            find(s, s, &NatIso::identity(&o.fun), real.grpd.id(o.e))
        })
        .collect();
    let inverse: Vec<Mor> = mors
        .iter()
        .zip(&ends)
        .map(|(m, &(s, t))| find(t, s, &m.psi.inverse(), real.grpd.inv(m.f)))
        .collect();
    let compose = |g: Mor, f: Mor| -> Mor {
        let (mg, mf) = (&mors[g.idx()], &mors[f.idx()]);
        let psi = mg.psi.after(&mf.psi).expect("composable 2-cells");
        find(ends[f.idx()].0, ends[g.idx()].1, &psi, real.grpd.compose(mg.f, mf.f))
    };
    let morphisms: Vec<Morphism> = ends
        .iter()
        .enumerate()
        .map(|(k, &(src, tgt))| Morphism {
            id: format!("m{k}"),
            src,
            tgt,
        })
        .collect();
    let objects: Vec<String> = (0..objs.len()).map(|k| format!("x{k}")).collect();
    let grpd = Arc::new(FinGroupoid::from_fn(objects, morphisms, identity, inverse, compose));
    let rfun = GFunctor::from_fn(&grpd, &real.grpd, |o| objs[o.idx()].e, |m| mors[m.idx()].f);
    let asm = Assembly::new(grpd, real.grpd.clone(), rfun)?;
    Ok(WeakExp {
        asm,
        x: x.clone(),
        y: y.clone(),
        real,
        objs,
        mors,
        obj_index,
        mor_index,
    })
}

impl WeakExp {
    pub fn object(&self, o: Obj) -> &ExpObj {
        &self.objs[o.idx()]
    }

    pub fn morphism(&self, m: Mor) -> &ExpMor {
        &self.mors[m.idx()]
    }

    pub fn object_of(&self, fun: &GFunctor, e: Obj, eps: &NatIso) -> Option<Obj> {
        self.obj_index
            .get(&(fun.clone(), e, eps.comps().to_vec()))
            .copied()
    }

    pub fn morphism_of(&self, s: Obj, t: Obj, psi: &NatIso, f: Mor) -> Option<Mor> {
        self.mor_index.get(&(s, t, psi.comps().to_vec(), f)).copied()
    }

    /// `ev: Yˣ × X → Y`, realized by `(eval, ε')` with `ε'_{(F,e,ε,x)} = ε_x`.
    pub fn ev(&self, caps: &Caps) -> Result<(ProductAsm, RealizedMorphism)> {
        let p = product(&self.asm, &self.x, caps)?;
        let (g, xb, yb) = (&self.asm.base, &self.x.base, &self.y.base);
        let fun = GFunctor::from_fn(
            &p.base.grpd,
            yb,
            |o| {
                let (k, xo) = p.base.split_obj(o);
                self.objs[k.idx()].fun.ob(xo)
            },
            |m| {
                let (n, u) = p.base.split_mor(m);
                let tgt = &self.objs[g.tgt(n).idx()].fun;
                yb.compose(tgt.mor(u), self.mors[n.idx()].psi.at(xb.src(u)))
            },
        );
        let (_, e) = self.real.eval();
        let e = e.retyped(&p.real.grpd, &self.y.rtype)?;
        let src = e.after(&p.asm.rfun)?;
        let tgt = self.y.rfun.after(&fun)?;
        let eps = NatIso::from_fn(&src, &tgt, |o| {
            let (k, xo) = p.base.split_obj(o);
            self.objs[k.idx()].eps.at(xo)
        })?;
        let m = RealizedMorphism::unchecked(&p.asm, &self.y, fun, e, eps);
        Ok((p, m))
    }

    /// `K̃: Z → Yˣ` for `K: Z × X → Y` carrying its realizer `(e, ε)`.
    pub fn transpose(&self, zx: &ProductAsm, k: &RealizedMorphism, caps: &Caps) -> Result<RealizedMorphism> {
        if !k.src.same(&zx.asm) || !zx.right.same(&self.x) || !k.tgt.same(&self.y) {
            return Err(Error::Mismatch("transpose: K is not a map Z × X → Y".into()));
        }
        let z = &zx.left;
        let (zb, xb, a) = (&z.base, &self.x.base, &self.x.rtype);
        let c = &z.rtype;
        let ca = product_capped(c, a, caps)?;
        let slice_e = |rz: Obj| {
            GFunctor::from_fn(a, &self.y.rtype, |ao| k.e.ob(ca.obj(rz, ao)), |u| k.e.mor(ca.mor(c.id(rz), u)))
        };
        let mut omap = Vec::with_capacity(zb.object_count());
        for zo in zb.objects() {
            let fun = GFunctor::from_fn(xb, &self.y.base, |xo| k.fun.ob(zx.base.obj(zo, xo)), |u| {
                k.fun.mor(zx.base.mor(zb.id(zo), u))
            });
            let e = self
                .real
                .obj_of(&slice_e(z.rfun.ob(zo)))
                .ok_or_else(|| Error::Precondition("transpose: slice realizer missing".into()))?;
            let src = self.real.functor(e).after(&self.x.rfun)?;
            let eps = NatIso::from_fn(&src, &self.y.rfun.after(&fun)?, |xo| {
                k.eps.at(zx.base.obj(zo, xo))
            })?;
            omap.push(
                self.object_of(&fun, e, &eps)
                    .ok_or_else(|| Error::Precondition("transpose: object not in Real(Yˣ)".into()))?,
            );
        }
        let mut mmap = Vec::with_capacity(zb.morphism_count());
        for r in zb.morphisms() {
            let (s, t) = (omap[zb.src(r).idx()], omap[zb.tgt(r).idx()]);
            let (os, ot) = (&self.objs[s.idx()], &self.objs[t.idx()]);
            let psi = NatIso::from_fn(&os.fun, &ot.fun, |xo| k.fun.mor(zx.base.mor(r, xb.id(xo))))?;
            let rr = z.rfun.mor(r);
            let n = NatIso::from_fn(self.real.functor(os.e), self.real.functor(ot.e), |ao| {
                k.e.mor(ca.mor(rr, a.id(ao)))
            })?;
            let f = self
                .real
                .mor_of(&n)
                .ok_or_else(|| Error::Precondition("transpose: realizer path missing".into()))?;
            mmap.push(
                self.morphism_of(s, t, &psi, f)
                    .ok_or_else(|| Error::Precondition("transpose: morphism not in Real(Yˣ)".into()))?,
            );
        }
        let fun = GFunctor::new(zb.clone(), self.asm.base.clone(), omap, mmap)?;
        let e = self.real.curry(&ca, &k.e.retyped(&ca.grpd, &self.y.rtype)?)?;
        let src = e.after(&z.rfun)?;
        let tgt = self.asm.rfun.after(&fun)?;
        let eps = NatIso::from_fn(&src, &tgt, |o| self.asm.rtype.id(src.ob(o)))?;
        Ok(RealizedMorphism::unchecked(z, &self.asm, fun, e, eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::find_realizer;
    use gral_core::groupoid::{cyclic, walking_iso};

    #[test]
    fn exponential_of_terminal() {
        let caps = Caps::default();
        let one = Assembly::terminal();
        let y = Assembly::of(&GFunctor::identity(&cyclic(2, "z")));
        let w = weak_exponential(&one, &y, &caps).unwrap();
        assert!(w.asm.is_modest());
        let (_, ev) = w.ev(&caps).unwrap();
        assert!(ev.is_valid(), "{:?}", ev.validate());
    }

    #[test]
    fn beta_law_on_all_maps() {
        let caps = Caps::default();
        let z = Assembly::of(&GFunctor::identity(&walking_iso()));
        let x = Assembly::of(&GFunctor::identity(&cyclic(2, "a")));
        let y = Assembly::of(&GFunctor::identity(&cyclic(2, "b")));
        let zx = product(&z, &x, &caps).unwrap();
        let w = weak_exponential(&x, &y, &caps).unwrap();
        let (ex, ev) = w.ev(&caps).unwrap();
        let mut n = 0;
        for fun in enumerate::functors(&zx.asm.base, &y.base, 1000).unwrap() {
            let Some(k) = find_realizer(&zx.asm, &y, &fun, &caps).unwrap() else {
                continue;
            };
            assert!(k.is_valid());
            let kt = w.transpose(&zx, &k, &caps).unwrap();
            assert!(kt.is_valid(), "{:?}", kt.validate());
            let id = RealizedMorphism::identity(&x);
            let back = ev.after(&ex.times(&zx, &kt, &id).unwrap()).unwrap();
            assert_eq!(back, k);
            n += 1;
        }
        assert!(n > 0);
    }
}
