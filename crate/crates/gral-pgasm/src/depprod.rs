//! Weak dependent products along fibrations, homotopy fibres, modest
//! fibrations, the chaotic inclusion and universal objects.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use gral_core::construct::{exponential, product_capped, Cleavage, Exponential, LiftFailure, Product};
use gral_core::enumerate;
use gral_core::groupoid::{FinGroupoid, Grpd, Mor, Morphism, Obj};
use gral_core::{Caps, Error, GFunctor, Homotopy, IntervalData, NatIso, RealizerCategory, Result};

use crate::asm::{Asm, Assembly, Modesty, RealizedMorphism};
use crate::pathcat::{pseudopullback_asm, pullback_asm, Fibration, PseudoPullbackAsm, PullbackAsm};

fn lift_error(l: LiftFailure) -> Error {
    Error::Structural(l.description)
}

/// `F↓z`, the pseudopullback of `f` along the point `z`. Its realizer type
/// `(B × 1) × C^{𝕀₁}` does not depend on `z`.
pub fn homotopy_fibre(f: &RealizedMorphism, z: Obj, caps: &Caps) -> Result<PseudoPullbackAsm> {
    if z.idx() >= f.tgt.base.object_count() {
        return Err(Error::Precondition(format!("object {} is not in the base", z.0)));
    }
    pseudopullback_asm(f, &RealizedMorphism::point(&f.tgt, z), caps)
}

/// The object `z` a homotopy fibre lies over.
fn fibre_point(pp: &PseudoPullbackAsm) -> Obj {
    pp.g.fun.ob(Obj(0))
}

fn shift_functor(src: &PseudoPullbackAsm, tgt: &PseudoPullbackAsm, r: Mor) -> Result<GFunctor> {
    let zb = &src.f.tgt.base;
    let missing = || Error::Structural("F↓r leaves the homotopy fibre".into());
    let omap = src
        .comma
        .grpd
        .objects()
        .map(|o| {
            let (y, t, u) = src.comma.split_obj(o);
            tgt.comma.obj(y, t, zb.compose(r, u)).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let mmap = src
        .comma
        .grpd
        .morphisms()
        .map(|m| {
            let (q, t) = src.comma.split_mor(m);
            tgt.comma.mor(omap[src.comma.grpd.src(m).idx()], q, t).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    GFunctor::new(src.comma.grpd.clone(), tgt.comma.grpd.clone(), omap, mmap)
}

/// `ε^r` at `(y, u)`: identity on `‖y‖`, and the square `(id, ‖r‖)` from
/// the path `‖u‖` to the path `‖ru‖`.
fn shift_eps(src: &PseudoPullbackAsm, tgt: &PseudoPullbackAsm, shift: &GFunctor, r: Mor, o: Obj) -> Result<Mor> {
    let z = &src.f.tgt;
    let (ab, from) = src.real.split_obj(src.asm.rfun.ob(o));
    let (_, to) = tgt.real.split_obj(tgt.asm.rfun.ob(shift.ob(o)));
    let (y, _, _) = src.comma.split_obj(o);
    let ends = [z.rtype.id(z.rfun.ob(src.f.fun.ob(y))), z.rfun.mor(r)];
    let n = NatIso::from_fn(src.paths.functor(from), src.paths.functor(to), |j| ends[j.idx()])?;
    let nm = src
        .paths
        .mor_of(&n)
        .ok_or_else(|| Error::Structural("path square missing".into()))?;
    Ok(src.real.mor(src.ab.grpd.id(ab), nm))
}

/// `F↓r: F↓z → F↓z'`, `(y, u) ↦ (y, ru)`, realized by `(id, ε^r)`.
pub fn fibre_map(src: &PseudoPullbackAsm, tgt: &PseudoPullbackAsm, r: Mor) -> Result<RealizedMorphism> {
    let zb = &src.f.tgt.base;
    if zb.src(r) != fibre_point(src) || zb.tgt(r) != fibre_point(tgt) {
        return Err(Error::Mismatch("F↓r between the wrong homotopy fibres".into()));
    }
    let fun = shift_functor(src, tgt, r)?;
    let e = GFunctor::identity(&src.asm.rtype);
    let eps = NatIso::from_fn(&src.asm.rfun, &tgt.asm.rfun.after(&fun)?, |o| {
        shift_eps(src, tgt, &fun, r, o).expect("path square")
    })?;
    RealizedMorphism::new(&src.asm, &tgt.asm, fun, e, eps)
}

/// An object `(z, H, e, ε)` of `Π_F X`: `H: F↓z → X` over `Y` with
/// `(e, ε) ⊩ H`.
#[derive(Clone, Debug)]
pub struct PiObj {
    pub z: Obj,
    pub h: GFunctor,
    pub e: Obj,
    pub eps: NatIso,
}

/// A morphism `(r, ψ, f)` with `ψ: H ⇒ H'∘(F↓r)` vertical over `Y`. The
/// filler `ζ` is determined by its boundary.
#[derive(Clone, Debug)]
pub struct PiMor {
    pub r: Mor,
    pub psi: Vec<Mor>,
    pub f: Mor,
}

type ObjKey = (Obj, GFunctor, Obj, Vec<Mor>);
type MorKey = (Obj, Obj, Mor, Vec<Mor>, Mor);

#[derive(Clone, Debug, Default)]
struct Tables {
    objs: Vec<PiObj>,
    mors: Vec<PiMor>,
    ends: Vec<(Obj, Obj)>,
    obj_index: FxHashMap<ObjKey, Obj>,
    mor_index: FxHashMap<MorKey, Mor>,
}

impl Tables {
    fn obj_of(&self, z: Obj, h: &GFunctor, e: Obj, eps: &[Mor]) -> Option<Obj> {
        self.obj_index.get(&(z, h.clone(), e, eps.to_vec())).copied()
    }

    fn mor_of(&self, s: Obj, t: Obj, r: Mor, psi: &[Mor], f: Mor) -> Option<Mor> {
        self.mor_index.get(&(s, t, r, psi.to_vec(), f)).copied()
    }
}

/// `Π_F X` for fibrations `G: X → Y` and `F: Y → Z`, with its projection
/// to `Z`.
#[derive(Clone, Debug)]
pub struct DependentProduct {
    pub f: Fibration,
    pub g: Fibration,
    /// `F↓z` for every object `z`.
    pub fibres: Vec<PseudoPullbackAsm>,
    /// `F↓r` for every morphism `r`.
    pub shifts: Vec<GFunctor>,
    /// `A^{(B × 1) × C^{𝕀₁}}`.
    pub exp: Arc<Exponential>,
    /// `C × A^{(B × 1) × C^{𝕀₁}}`.
    pub real: Product,
    pub asm: Asm,
    pub fibration: Fibration,
    tables: Tables,
}

pub fn dependent_product(g: &Fibration, f: &Fibration, caps: &Caps) -> Result<DependentProduct> {
    if !g.map.tgt.same(&f.map.src) {
        return Err(Error::Mismatch("G does not land in the domain of F".into()));
    }
    let (x, z) = (&g.map.src, &f.map.tgt);
    let (xb, yb, zb) = (&x.base, &g.map.tgt.base, &z.base);
    if zb.object_count() == 0 {
        return Err(Error::Precondition("empty base".into()));
    }
    let fibres = zb
        .objects()
        .map(|o| homotopy_fibre(&f.map, o, caps))
        .collect::<Result<Vec<_>>>()?;
    let mut shifts = Vec::with_capacity(zb.morphism_count());
    let mut shift_eps_tab = Vec::with_capacity(zb.morphism_count());
    for r in zb.morphisms() {
        let (s, t) = (&fibres[zb.src(r).idx()], &fibres[zb.tgt(r).idx()]);
        let sh = shift_functor(s, t, r)?;
        let tab = s
            .comma
            .grpd
            .objects()
            .map(|o| shift_eps(s, t, &sh, r, o))
            .collect::<Result<Vec<_>>>()?;
        shifts.push(sh);
        shift_eps_tab.push(tab);
    }
    let bp = fibres[0].asm.rtype.clone();
    let exp = exponential(&bp, &x.rtype, caps)?;
    let a = &x.rtype;

    let mut t = Tables::default();
    for (zi, fib) in fibres.iter().enumerate() {
        let over = fib.comma.p1();
        for h in enumerate::functors_over(&over, &g.map.fun, caps.max_morphisms)? {
            let target = x.rfun.after(&h)?;
            for (k, e) in exp.functors().iter().enumerate() {
                let src = e.after(&fib.asm.rfun)?;
                for eps in enumerate::natisos(&src, &target, caps.max_morphisms)? {
                    t.objs.push(PiObj {
                        z: Obj(zi as u32),
                        h: h.clone(),
                        e: Obj(k as u32),
                        eps,
                    });
                    caps.check("dependent product", t.objs.len(), 0)?;
                }
            }
        }
    }
    for (si, os) in t.objs.iter().enumerate() {
        let fib = &fibres[os.z.idx()];
        for (ti, ot) in t.objs.iter().enumerate() {
            for &r in zb.hom(os.z, ot.z) {
                let sh = &shifts[r.idx()];
                let ht = ot.h.after(sh)?;
                let et = exp.functor(ot.e);
                for &fm in exp.grpd.hom(os.e, ot.e) {
                    let n = exp.natiso(fm);
                    let required = |o: Obj| {
                        a.compose_path(&[
                            a.inv(os.eps.at(o)),
                            n.at(fib.asm.rfun.ob(o)),
                            et.mor(shift_eps_tab[r.idx()][o.idx()]),
                            ot.eps.at(sh.ob(o)),
                        ])
                    };
                    let ok = |o: Obj, m: Mor| yb.is_identity(g.map.fun.mor(m)) && x.rfun.mor(m) == required(o);
                    for psi in enumerate::natisos_filtered(&os.h, &ht, &ok, caps.max_morphisms)? {
                        t.mors.push(PiMor {
                            r,
                            psi: psi.comps().to_vec(),
                            f: fm,
                        });
                        t.ends.push((Obj(si as u32), Obj(ti as u32)));
                        caps.check("dependent product", t.objs.len(), t.mors.len())?;
                    }
                }
            }
        }
    }
    t.obj_index = t
        .objs
        .iter()
        .enumerate()
        .map(|(k, o)| ((o.z, o.h.clone(), o.e, o.eps.comps().to_vec()), Obj(k as u32)))
        .collect();
    t.mor_index = t
        .mors
        .iter()
        .zip(&t.ends)
        .enumerate()
        .map(|(k, (m, &(s, tt)))| ((s, tt, m.r, m.psi.clone(), m.f), Mor(k as u32)))
        .collect();

    let find = |s: Obj, tt: Obj, r: Mor, psi: &[Mor], f: Mor| -> Mor {
        t.mor_of(s, tt, r, psi, f).expect("closed under the groupoid operations")
    };
    let identity: Vec<Mor> = t
        .objs
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let s = Obj(k as u32);
            let psi: Vec<Mor> = o.h.omap().iter().map(|&xo| xb.id(xo)).collect();
            find(s, s, zb.id(o.z), &psi, exp.grpd.id(o.e))
        })
        .collect();
    let inverse: Vec<Mor> = t
        .mors
        .iter()
        .zip(&t.ends)
        .map(|(m, &(s, tt))| {
            let back = &shifts[zb.inv(m.r).idx()];
            let psi: Vec<Mor> = back.omap().iter().map(|&o| xb.inv(m.psi[o.idx()])).collect();
            find(tt, s, zb.inv(m.r), &psi, exp.grpd.inv(m.f))
        })
        .collect();
    let compose = |gm: Mor, fm: Mor| -> Mor {
        let (mg, mf) = (&t.mors[gm.idx()], &t.mors[fm.idx()]);
        let sh = &shifts[mf.r.idx()];
        let psi: Vec<Mor> = mf
            .psi
            .iter()
            .enumerate()
            .map(|(o, &p)| xb.compose(mg.psi[sh.ob(Obj(o as u32)).idx()], p))
            .collect();
        find(
            t.ends[fm.idx()].0,
            t.ends[gm.idx()].1,
            zb.compose(mg.r, mf.r),
            &psi,
            exp.grpd.compose(mg.f, mf.f),
        )
    };
    let morphisms: Vec<Morphism> = t
        .ends
        .iter()
        .enumerate()
        .map(|(k, &(src, tgt))| Morphism {
            id: format!("m{k}"),
            src,
            tgt,
        })
        .collect();
    let objects: Vec<String> = (0..t.objs.len()).map(|k| format!("p{k}")).collect();
    let grpd = Arc::new(FinGroupoid::from_fn(objects, morphisms, identity, inverse, compose));

    let real = product_capped(&z.rtype, &exp.grpd, caps)?;
    let rfun = GFunctor::from_fn(
        &grpd,
        &real.grpd,
        |o| {
            let p = &t.objs[o.idx()];
            real.obj(z.rfun.ob(p.z), p.e)
        },
        |m| {
            let p = &t.mors[m.idx()];
            real.mor(z.rfun.mor(p.r), p.f)
        },
    );
    let asm = Assembly::new(grpd.clone(), real.grpd.clone(), rfun)?;
    let pi = GFunctor::from_fn(&grpd, zb, |o| t.objs[o.idx()].z, |m| t.mors[m.idx()].r);
    let eps = NatIso::identity(&z.rfun.after(&pi)?);
    let map = RealizedMorphism::new(&asm, z, pi.clone(), real.fst(), eps)?;

    let cleavage = Cleavage::from_fn(&pi, |o, r| {
        let p = &t.objs[o.idx()];
        let rinv = zb.inv(r);
        let back = &shifts[rinv.idx()];
        let fib = &fibres[zb.tgt(r).idx()];
        let h = p.h.after(back).ok()?;
        let e = exp.functor(p.e);
        let eps: Vec<Mor> = fib
            .comma
            .grpd
            .objects()
            .map(|o2| a.compose(p.eps.at(back.ob(o2)), e.mor(shift_eps_tab[rinv.idx()][o2.idx()])))
            .collect();
        let target = t.obj_of(zb.tgt(r), &h, p.e, &eps)?;
        let psi: Vec<Mor> = p.h.omap().iter().map(|&xo| xb.id(xo)).collect();
        t.mor_of(o, target, r, &psi, exp.grpd.id(p.e))
    })
    .map_err(lift_error)?;
    let fibration = Fibration::with_cleavage(map, cleavage)?;
    Ok(DependentProduct {
        f: f.clone(),
        g: g.clone(),
        fibres,
        shifts,
        exp,
        real,
        asm,
        fibration,
        tables: t,
    })
}

impl DependentProduct {
    pub fn object(&self, o: Obj) -> &PiObj {
        &self.tables.objs[o.idx()]
    }

    pub fn morphism(&self, m: Mor) -> &PiMor {
        &self.tables.mors[m.idx()]
    }

    pub fn object_of(&self, z: Obj, h: &GFunctor, e: Obj, eps: &[Mor]) -> Option<Obj> {
        self.tables.obj_of(z, h, e, eps)
    }

    pub fn morphism_of(&self, s: Obj, t: Obj, r: Mor, psi: &[Mor], f: Mor) -> Option<Mor> {
        self.tables.mor_of(s, t, r, psi, f)
    }

    /// The constant path at `c` in `C^{𝕀₁}`.
    fn constant_path(&self, c: Obj) -> Obj {
        let paths = &self.fibres[0].paths;
        let k = GFunctor::constant(&paths.base, &paths.target, c);
        paths.obj_of(&k).expect("constant path")
    }

    fn constant_square(&self, g: Mor) -> Mor {
        let paths = &self.fibres[0].paths;
        let c = &paths.target;
        let (s, t) = (self.constant_path(c.src(g)), self.constant_path(c.tgt(g)));
        let n = NatIso::from_fn(paths.functor(s), paths.functor(t), |_| g).expect("constant square");
        paths.mor_of(&n).expect("constant square")
    }

    /// `ev: F*Π_F X → X` over `Y`: `(y, z, H, e, ε) ↦ H(y, id_z)` and
    /// `(q, r, ψ, f) ↦ H'(q)∘ψ_{(y, id_z)}`. Realized by
    /// `(b, c, e) ↦ e(b, ∗, κc)` with `κ` the constant path, and `ε_{(y, id_z)}`.
    pub fn ev(&self, caps: &Caps) -> Result<(PullbackAsm, RealizedMorphism)> {
        let pa = pullback_asm(&self.f.map, &self.fibration.map, caps)?;
        let x = &self.g.map.src;
        let (xb, zb) = (&x.base, &self.f.map.tgt.base);
        let t = &self.tables;
        let at_id = |y: Obj, z: Obj| {
            let fib = &self.fibres[z.idx()];
            fib.comma.obj(y, Obj(0), zb.id(z)).expect("(y, id) in F↓z")
        };
        let fun = GFunctor::from_fn(
            &pa.pb.grpd,
            xb,
            |o| {
                let (y, p) = pa.pb.split_obj(o);
                let p = &t.objs[p.idx()];
                p.h.ob(at_id(y, p.z))
            },
            |m| {
                let (q, pm) = pa.pb.split_mor(m);
                let (y, p0) = pa.pb.split_obj(pa.pb.grpd.src(m));
                let (src, tgt) = (&t.objs[p0.idx()], &t.objs[t.ends[pm.idx()].1.idx()]);
                let mm = &t.mors[pm.idx()];
                let fib = &self.fibres[tgt.z.idx()];
                let from = fib.comma.obj(y, Obj(0), mm.r).expect("(y, r) in F↓z'");
                let tmor = fib.comma.g.dom().id(Obj(0));
                let qq = fib.comma.mor(from, q, tmor).expect("q in F↓z'");
                xb.compose(tgt.h.mor(qq), mm.psi[at_id(y, src.z).idx()])
            },
        );
        let fib = &self.fibres[0];
        let (b, c) = (&self.g.map.tgt.rtype, &self.f.map.tgt.rtype);
        let kobj: Vec<Obj> = c.objects().map(|o| self.constant_path(o)).collect();
        let kmor: Vec<Mor> = c.morphisms().map(|m| self.constant_square(m)).collect();
        let star = fib.ab.right.id(Obj(0));
        let bp_obj = |bo: Obj, co: Obj| fib.real.obj(fib.ab.obj(bo, Obj(0)), kobj[co.idx()]);
        let e = GFunctor::from_fn(
            &pa.real.grpd,
            &x.rtype,
            |o| {
                let (bo, ce) = pa.real.split_obj(o);
                let (co, k) = self.real.split_obj(ce);
                self.exp.functor(k).ob(bp_obj(bo, co))
            },
            |m| {
                let (bm, cm) = pa.real.split_mor(m);
                let (gm, n) = self.real.split_mor(cm);
                let bpm = fib.real.mor(fib.ab.mor(bm, star), kmor[gm.idx()]);
                let k0 = self.exp.grpd.src(n);
                let end = bp_obj(b.tgt(bm), c.tgt(gm));
                x.rtype.compose(self.exp.natiso(n).at(end), self.exp.functor(k0).mor(bpm))
            },
        );
        let eps = NatIso::from_fn(&e.after(&pa.asm.rfun)?, &x.rfun.after(&fun)?, |o| {
            let (y, p) = pa.pb.split_obj(o);
            let p = &t.objs[p.idx()];
            p.eps.at(at_id(y, p.z))
        })?;
        let ev = RealizedMorphism::new(&pa.asm, x, fun, e, eps)?;
        Ok((pa, ev))
    }

    /// `T: W → Π_F X` for `R: W → Z` and `S: F*W → X` over `Y`, with
    /// `Tw = (Rw, H_w, e_w, ε_w)`. `H_w(y, u)` is `S(u*y, w)` transported
    /// back along `ū(y)⁻¹`, so that `H_w` lies over `Y` and `H_w(y, id) = S(y, w)`.
    pub fn transpose(&self, fw: &PullbackAsm, s: &RealizedMorphism) -> Result<RealizedMorphism> {
        if fw.f != self.f.map || !fw.f.src.same(&self.f.map.src) {
            return Err(Error::Mismatch("transpose: F*W is not a pullback of F".into()));
        }
        let x = &self.g.map.src;
        if !s.src.same(&fw.asm) || !s.tgt.same(x) {
            return Err(Error::Mismatch("transpose: S is not a map F*W → X".into()));
        }
        if self.g.map.fun.after(&s.fun)? != fw.p1.fun {
            return Err(Error::Precondition("transpose: S does not lie over Y".into()));
        }
        let r = &fw.g;
        let (w, y) = (&r.src, &self.f.map.src);
        let (wb, yb, xb) = (&w.base, &y.base, &x.base);
        let (a, d) = (&x.rtype, &w.rtype);
        let zb = &self.f.map.tgt.base;
        let fib0 = &self.fibres[0];
        let bp = &fib0.real;

        // `(k, (u*y, w), l)` with `k = ū(y)` and `l` the lift of `k⁻¹` at `S(u*y, w)`.
        let data = |wo: Obj, o: Obj| -> (Mor, Obj, Mor) {
            let fib = &self.fibres[r.fun.ob(wo).idx()];
            let (yo, _, u) = fib.comma.split_obj(o);
            let k = self.f.lift(yo, u);
            let pbo = fw.pb.obj(yb.tgt(k), wo).expect("(u*y, w) in F*W");
            let l = self.g.lift(s.fun.ob(pbo), yb.inv(k));
            (k, pbo, l)
        };
        let slice = |dobj: Obj| {
            GFunctor::from_fn(
                &bp.grpd,
                a,
                |o| {
                    let (ab, _) = bp.split_obj(o);
                    s.e.ob(fw.real.obj(fib0.ab.split_obj(ab).0, dobj))
                },
                |m| {
                    let (abm, _) = bp.split_mor(m);
                    s.e.mor(fw.real.mor(fib0.ab.split_mor(abm).0, d.id(dobj)))
                },
            )
        };
        let slice_mor = |dm: Mor| -> Result<Mor> {
            let (s0, s1) = (slice(d.src(dm)), slice(d.tgt(dm)));
            let n = NatIso::from_fn(&s0, &s1, |o| {
                let (ab, _) = bp.split_obj(o);
                s.e.mor(fw.real.mor(y.rtype.id(fib0.ab.split_obj(ab).0), dm))
            })?;
            self.exp
                .mor_of(&n)
                .ok_or_else(|| Error::Structural("transpose: realizer square missing".into()))
        };
        let eobj = d
            .objects()
            .map(|o| {
                self.exp
                    .obj_of(&slice(o))
                    .ok_or_else(|| Error::Structural("transpose: realizer missing".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let emor = d.morphisms().map(slice_mor).collect::<Result<Vec<_>>>()?;

        let mut omap = Vec::with_capacity(wb.object_count());
        for wo in wb.objects() {
            let z = r.fun.ob(wo);
            let fib = &self.fibres[z.idx()];
            let cg = &fib.comma.grpd;
            let h = GFunctor::from_fn(
                cg,
                xb,
                |o| xb.tgt(data(wo, o).2),
                |q| {
                    let (k0, _, l0) = data(wo, cg.src(q));
                    let (k1, _, l1) = data(wo, cg.tgt(q));
                    let (qy, _) = fib.comma.split_mor(q);
                    let m = fw
                        .pb
                        .mor(yb.compose_path(&[yb.inv(k0), qy, k1]), wb.id(wo))
                        .expect("conjugate of q in F*W");
                    xb.compose_path(&[xb.inv(l0), s.fun.mor(m), l1])
                },
            );
            let rw = w.rfun.ob(wo);
            let eps: Vec<Mor> = cg
                .objects()
                .map(|o| {
                    let (k, pbo, l) = data(wo, o);
                    a.compose_path(&[
                        s.e.mor(fw.real.mor(y.rfun.mor(k), d.id(rw))),
                        s.eps.at(pbo),
                        x.rfun.mor(l),
                    ])
                })
                .collect();
            let e = eobj[rw.idx()];
            let o = self
                .object_of(z, &h, e, &eps)
                .ok_or_else(|| Error::Structural(format!("transpose: T({}) is not in Π_F X", wo.0)))?;
            omap.push(o);
        }
        let mut mmap = Vec::with_capacity(wb.morphism_count());
        for v in wb.morphisms() {
            let (w0, w1) = (wb.src(v), wb.tgt(v));
            let rv = r.fun.mor(v);
            let sh = &self.shifts[rv.idx()];
            let fib = &self.fibres[zb.src(rv).idx()];
            let psi: Vec<Mor> = fib
                .comma
                .grpd
                .objects()
                .map(|o| {
                    let (k, _, l) = data(w0, o);
                    let (k2, _, l2) = data(w1, sh.ob(o));
                    let m = fw.pb.mor(yb.compose(k2, yb.inv(k)), v).expect("(k''k⁻¹, v) in F*W");
                    xb.compose_path(&[xb.inv(l), s.fun.mor(m), l2])
                })
                .collect();
            let f = emor[w.rfun.mor(v).idx()];
            let m = self
                .morphism_of(omap[w0.idx()], omap[w1.idx()], rv, &psi, f)
                .ok_or_else(|| Error::Structural(format!("transpose: T({}) is not in Π_F X", v.0)))?;
            mmap.push(m);
        }
        let fun = GFunctor::new(wb.clone(), self.asm.base.clone(), omap, mmap)?;
        let e = GFunctor::from_fn(
            d,
            &self.asm.rtype,
            |o| self.real.obj(r.e.ob(o), eobj[o.idx()]),
            |m| self.real.mor(r.e.mor(m), emor[m.idx()]),
        );
        let eps = NatIso::from_fn(&e.after(&w.rfun)?, &self.asm.rfun.after(&fun)?, |wo| {
            self.real
                .mor(r.eps.at(wo), self.exp.grpd.id(eobj[w.rfun.ob(wo).idx()]))
        })?;
        RealizedMorphism::new(w, &self.asm, fun, e, eps)
    }
}

/// First fibre `Y_x` of `m` that is not modest, with the reason.
pub fn non_modest_fibre(m: &Fibration) -> Result<Option<(Obj, Modesty)>> {
    for x in m.map.tgt.base.objects() {
        let (fib, _) = m.fibre(x)?;
        let why = fib.modesty();
        if !why.is_modest() {
            return Ok(Some((x, why)));
        }
    }
    Ok(None)
}

pub fn is_modest_fibration(m: &Fibration) -> Result<bool> {
    Ok(non_modest_fibre(m)?.is_none())
}

/// `G∘F` with lifts `f̄(ḡ(q))`.
pub fn compose_fibrations(g: &Fibration, f: &Fibration) -> Result<Fibration> {
    let map = g.map.after(&f.map)?;
    let cleavage =
        Cleavage::from_fn(&map.fun, |x, q| Some(f.lift(x, g.lift(f.map.fun.ob(x), q)))).map_err(lift_error)?;
    Fibration::with_cleavage(map, cleavage)
}

/// `h*M: X' ×_X Y → X'` with lifts `(q, M̄(h q))`.
pub fn pullback_fibration(m: &Fibration, h: &RealizedMorphism, caps: &Caps) -> Result<(PullbackAsm, Fibration)> {
    let pa = pullback_asm(h, &m.map, caps)?;
    let cleavage = Cleavage::from_fn(&pa.p1.fun, |o, q| {
        let (_, y) = pa.pb.split_obj(o);
        pa.pb.mor(q, m.lift(y, h.fun.mor(q)))
    })
    .map_err(lift_error)?;
    let fib = Fibration::with_cleavage(pa.p1.clone(), cleavage)?;
    Ok((pa, fib))
}

/// The split replacement `M̃ = π₂: M↓X → X` with lifts `(id, q)`. `M↓X`
/// carries the realizability `‖−‖_Y∘S` of `Y` along the equivalence
/// `S = π₁`, which is realized by `(id, id)`.
pub struct Splitting {
    pub pp: PseudoPullbackAsm,
    pub asm: Asm,
    pub s: RealizedMorphism,
    pub fibration: Fibration,
}

pub fn split(m: &Fibration, caps: &Caps) -> Result<Splitting> {
    let y = &m.map.src;
    let id = RealizedMorphism::identity(&m.map.tgt);
    let pp = pseudopullback_asm(&m.map, &id, caps)?;
    let asm = Assembly::new(pp.comma.grpd.clone(), y.rtype.clone(), y.rfun.after(&pp.p1.fun)?)?;
    let s = RealizedMorphism::new(
        &asm,
        y,
        pp.p1.fun.clone(),
        GFunctor::identity(&y.rtype),
        NatIso::identity(&asm.rfun),
    )?;
    let p2 = crate::asm::find_realizer(&asm, &m.map.tgt, &pp.p2.fun, caps)?
        .ok_or_else(|| Error::Structural("the split replacement is not realizable".into()))?;
    let yb = &y.base;
    let cleavage = Cleavage::from_fn(&p2.fun, |o, q| {
        let (yo, _, _) = pp.comma.split_obj(o);
        pp.comma.mor(o, yb.id(yo), q)
    })
    .map_err(lift_error)?;
    let fibration = Fibration::with_cleavage(p2, cleavage)?;
    Ok(Splitting { pp, asm, s, fibration })
}

/// One line of a closure report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCase {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

fn closure_case(name: String, m: &Fibration) -> Result<ClosureCase> {
    let bad = non_modest_fibre(m)?;
    Ok(ClosureCase {
        name,
        holds: bad.is_none(),
        detail: match bad {
            None => "modest".into(),
            Some((x, why)) => format!("fibre over {}: {why}", x.0),
        },
    })
}

/// Composites of modest fibrations and `Π_F(G)` for modest `G` are
/// modest. Pairs whose inputs are not modest are skipped.
pub fn check_modest_closure(
    composable: &[(Fibration, Fibration)],
    products: &[(Fibration, Fibration)],
    caps: &Caps,
) -> Result<Vec<ClosureCase>> {
    let mut out = Vec::new();
    for (k, (g, f)) in composable.iter().enumerate() {
        if is_modest_fibration(g)? && is_modest_fibration(f)? {
            out.push(closure_case(format!("composite {k}"), &compose_fibrations(g, f)?)?);
        }
    }
    for (k, (f, g)) in products.iter().enumerate() {
        if is_modest_fibration(g)? {
            let dp = dependent_product(g, f, caps)?;
            out.push(closure_case(format!("dependent product {k}"), &dp.fibration)?);
        }
    }
    Ok(out)
}

/// `∇X = (X, A, x ↦ a0)`.
pub fn nabla(x: &Grpd, rtype: &Grpd, a0: Obj) -> Result<Asm> {
    if a0.idx() >= rtype.object_count() {
        return Err(Error::Precondition(format!("point {} is not in the realizer type", a0.0)));
    }
    Ok(Assembly::chaotic(x, rtype, a0))
}

/// Any functor into `∇Y`, realized by `(a0*, id)`.
pub fn nabla_map(src: &Asm, tgt: &Asm, fun: GFunctor) -> Result<RealizedMorphism> {
    let a0 = tgt.rfun.omap().first().copied().unwrap_or(Obj(0));
    let e = GFunctor::constant(&src.rtype, &tgt.rtype, a0);
    let eps = NatIso::identity(&e.after(&src.rfun)?);
    RealizedMorphism::new(src, tgt, fun, e, eps)
}

/// `A` as a pseudoretract of `U`: `s: A → U`, `r: U → A`, `ρ: rs ⇒ id`.
#[derive(Clone, Debug)]
pub struct PseudoRetract<C: RealizerCategory> {
    pub a: C::Ob,
    pub s: C::Map,
    pub r: C::Map,
    pub rho: Homotopy<C>,
}

#[derive(Clone, Debug)]
pub struct UniversalObjectWitness<C: RealizerCategory> {
    pub u: C::Ob,
    pub retracts: Vec<PseudoRetract<C>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub probe: usize,
    pub pass: bool,
    pub detail: String,
}

fn check_retract<C: RealizerCategory>(cat: &C, iv: &IntervalData<C>, u: &C::Ob, p: &PseudoRetract<C>) -> Result<Option<String>> {
    let a = &p.a;
    if !cat.ob_eq(&cat.dom(&p.s), a) || !cat.ob_eq(&cat.cod(&p.s), u) {
        return Ok(Some("s is not a map A → U".into()));
    }
    if !cat.ob_eq(&cat.dom(&p.r), u) || !cat.ob_eq(&cat.cod(&p.r), a) {
        return Ok(Some("r is not a map U → A".into()));
    }
    if !cat.ob_eq(&p.rho.base, a) || !p.rho.is_valid(cat, iv) {
        return Ok(Some("ρ is not a homotopy on A".into()));
    }
    if p.rho.lhs != cat.compose(&p.r, &p.s)? {
        return Ok(Some("ρ does not start at r∘s".into()));
    }
    if p.rho.rhs != cat.identity(a) {
        return Ok(Some("ρ does not end at the identity".into()));
    }
    Ok(None)
}

/// Check the supplied pseudoretraction for every probe.
pub fn universal_object_check<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    w: &UniversalObjectWitness<C>,
    probes: &[C::Ob],
) -> Result<Vec<ProbeResult>> {
    let mut out = Vec::with_capacity(probes.len());
    for (k, a) in probes.iter().enumerate() {
        let mut detail = "no witness supplied".to_string();
        let mut pass = false;
        for p in w.retracts.iter().filter(|p| cat.ob_eq(&p.a, a)) {
            match check_retract(cat, iv, &w.u, p)? {
                None => {
                    pass = true;
                    detail = "pass".into();
                    break;
                }
                Some(why) => detail = why,
            }
        }
        out.push(ProbeResult { probe: k, pass, detail });
    }
    Ok(out)
}

/// Exhaustive search for a pseudoretraction of `a` onto `u`.
pub fn find_pseudoretract<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    u: &C::Ob,
    a: &C::Ob,
) -> Result<Option<PseudoRetract<C>>> {
    let cyl = cat.product(a, &iv.obj[1])?;
    let bodies = cat.hom(&cyl, a)?;
    let id = cat.identity(a);
    for s in cat.hom(a, u)? {
        for r in cat.hom(u, a)? {
            let rs = cat.compose(&r, &s)?;
            for body in &bodies {
                let rho = Homotopy::new(cat, iv, a, body.clone())?;
                if rho.lhs == rs && rho.rhs == id {
                    return Ok(Some(PseudoRetract {
                        a: a.clone(),
                        s,
                        r,
                        rho,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{find_realizer, product};
    use crate::category::discrete_assembly;
    use crate::pathcat::is_fibration;
    use gral_core::groupoid::{codiscrete, cyclic, discrete, terminal, walking_iso};
    use gral_core::{gpd_interval, Gpd};

    fn ab() -> Grpd {
        codiscrete(&["a".to_string(), "b".to_string()])
    }

    /// `G = π₁: Y × E → Y` and `F: Y → Z`.
    fn instances() -> Vec<(Fibration, Fibration)> {
        let caps = Caps::default();
        let one = Assembly::terminal();
        let z2 = discrete_assembly(&cyclic(2, "z"));
        let zab = Assembly::chaotic(&ab(), &terminal(), Obj(0));
        let mut out = Vec::new();
        for (y, f) in [
            (z2.clone(), RealizedMorphism::to_terminal(&z2)),
            (zab.clone(), RealizedMorphism::identity(&zab)),
            (zab.clone(), RealizedMorphism::to_terminal(&zab)),
        ] {
            for e in [one.clone(), z2.clone()] {
                let ye = product(&y, &e, &caps).unwrap();
                let g = is_fibration(&ye.fst()).unwrap();
                out.push((g, is_fibration(&f).unwrap()));
            }
        }
        out
    }

    fn sections(dp: &DependentProduct, r: &RealizedMorphism, caps: &Caps) -> (PullbackAsm, Vec<RealizedMorphism>) {
        let fw = pullback_asm(&dp.f.map, r, caps).unwrap();
        let x = &dp.g.map.src;
        let mut out = Vec::new();
        for fun in enumerate::functors_over(&fw.p1.fun, &dp.g.map.fun, 1000).unwrap() {
            if let Some(s) = find_realizer(&fw.asm, x, &fun, caps).unwrap() {
                out.push(s);
            }
        }
        (fw, out)
    }

    #[test]
    fn homotopy_fibre_sizes_and_maps() {
        let caps = Caps::default();
        let y = discrete_assembly(&walking_iso());
        let f = RealizedMorphism::identity(&y);
        let yb = &y.base;
        for z in yb.objects() {
            let fib = homotopy_fibre(&f, z, &caps).unwrap();
            let brute: usize = yb.objects().map(|o| yb.hom(o, z).len()).sum();
            assert_eq!(fib.asm.base.object_count(), brute);
            let id = fibre_map(&fib, &fib, yb.id(z)).unwrap();
            assert_eq!(id.fun, GFunctor::identity(&fib.asm.base));
        }
        let f0 = homotopy_fibre(&f, Obj(0), &caps).unwrap();
        let f1 = homotopy_fibre(&f, Obj(1), &caps).unwrap();
        let r = yb.hom(Obj(0), Obj(1))[0];
        let there = fibre_map(&f0, &f1, r).unwrap();
        let back = fibre_map(&f1, &f0, yb.inv(r)).unwrap();
        assert_eq!(back.after(&there).unwrap().fun, GFunctor::identity(&f0.asm.base));
        assert!(homotopy_fibre(&f, Obj(7), &caps).is_err());
    }

    #[test]
    fn pi_is_a_fibration_with_ev_over_y() {
        let caps = Caps::default();
        for (g, f) in instances() {
            let dp = dependent_product(&g, &f, &caps).unwrap();
            assert!(dp.asm.base.object_count() > 0);
            assert!(dp.fibration.map.is_valid());
            assert!(dp.fibration.cleavage.is_normal());
            let (pa, ev) = dp.ev(&caps).unwrap();
            assert!(ev.is_valid(), "{:?}", ev.validate());
            assert_eq!(g.map.fun.after(&ev.fun).unwrap(), pa.p1.fun);
        }
    }

    #[test]
    fn beta_law_on_the_nose() {
        let caps = Caps::default();
        let mut n = 0;
        for (g, f) in instances() {
            let dp = dependent_product(&g, &f, &caps).unwrap();
            let (pa, ev) = dp.ev(&caps).unwrap();
            let z = &f.map.tgt;
            let ws = [RealizedMorphism::identity(z), RealizedMorphism::to_terminal(z)];
            for r in ws.iter().filter(|r| r.tgt.same(z)) {
                let (fw, ss) = sections(&dp, r, &caps);
                for s in ss {
                    let t = dp.transpose(&fw, &s).unwrap();
                    assert_eq!(dp.fibration.map.after(&t).unwrap(), *r);
                    let ft = pa.universal(&fw.p1, &t.after(&fw.p2).unwrap()).unwrap();
                    assert_eq!(ev.after(&ft).unwrap().fun, s.fun);
                    n += 1;
                }
            }
        }
        assert!(n >= 10, "{n}");
    }

    #[test]
    fn modest_fibrations() {
        let caps = Caps::default();
        let z2 = discrete_assembly(&cyclic(2, "z"));
        let loopy = is_fibration(&RealizedMorphism::identity(&z2)).unwrap();
        assert!(matches!(non_modest_fibre(&loopy).unwrap(), Some((_, Modesty::NotFull { .. }))));
        let zab = Assembly::chaotic(&ab(), &terminal(), Obj(0));
        let id = is_fibration(&RealizedMorphism::identity(&zab)).unwrap();
        assert!(is_modest_fibration(&id).unwrap());
        let two = discrete(&["a".to_string(), "b".to_string()]);
        let bad = nabla(&two, &terminal(), Obj(0)).unwrap();
        let to_one = is_fibration(&RealizedMorphism::to_terminal(&bad)).unwrap();
        assert!(!is_modest_fibration(&to_one).unwrap());
        let comp = compose_fibrations(&id, &id).unwrap();
        assert!(is_modest_fibration(&comp).unwrap());
        let p = RealizedMorphism::to_terminal(&z2);
        let (_, pb) = pullback_fibration(&is_fibration(&p).unwrap(), &RealizedMorphism::to_terminal(&bad), &caps).unwrap();
        assert!(is_modest_fibration(&pb).unwrap());
        let sp = split(&is_fibration(&p).unwrap(), &caps).unwrap().fibration;
        assert!(sp.cleavage.is_normal());
        assert!(is_modest_fibration(&sp).unwrap());
        let products: Vec<_> = instances().into_iter().map(|(g, f)| (f, g)).collect();
        let report = check_modest_closure(&[(id.clone(), id.clone())], &products, &caps).unwrap();
        assert!(report.iter().all(|c| c.holds), "{report:?}");
    }

    #[test]
    fn nabla_realizes_everything() {
        assert!(nabla(&terminal(), &terminal(), Obj(3)).is_err());
        let tgt = nabla(&ab(), &cyclic(2, "z"), Obj(0)).unwrap();
        let src = discrete_assembly(&walking_iso());
        for fun in enumerate::functors(&src.base, &tgt.base, 100).unwrap() {
            assert!(nabla_map(&src, &tgt, fun).is_ok());
        }
    }

    #[test]
    fn universal_object_predicate() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let pt = terminal();
        let i1 = walking_iso();
        let found = find_pseudoretract(&cat, &iv, &i1, &pt).unwrap().unwrap();
        let w = UniversalObjectWitness {
            u: i1.clone(),
            retracts: vec![found],
        };
        let rep = universal_object_check(&cat, &iv, &w, &[pt.clone(), i1.clone()]).unwrap();
        assert!(rep[0].pass);
        assert!(!rep[1].pass);
        let two = discrete(&["a".to_string(), "b".to_string()]);
        assert!(find_pseudoretract(&cat, &iv, &pt, &two).unwrap().is_none());
    }
}
