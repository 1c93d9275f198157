//! Fibrations and equivalences of assemblies, path objects, sections of
//! acyclic fibrations, finite (2,1)-limits and transport of structure along
//! equivalences.

use std::sync::Arc;

use gral_core::construct::{
    equivalence_inverse, exponential, fibre, isofibration_cleavage, iso_comma, product_capped,
    pullback, Cleavage, Exponential, IsoComma, LiftFailure, Product, Pullback,
};
use gral_core::enumerate::{self, FunctorFilter};
use gral_core::fundamental::morphism_path;
use gral_core::groupoid::{walking_iso, Mor, Obj};
use gral_core::{Caps, EquivalenceData, Error, GFunctor, NatIso, Result};

use crate::asm::{find_realizer, product, Asm, Assembly, ProductAsm, RealizedMorphism};
use crate::exp::{weak_exponential, WeakExp};
use crate::twocell::{assemble, cylinder, TwoCell};

/// A realized isofibration with a chosen cleavage.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub map: RealizedMorphism,
    pub cleavage: Cleavage,
}

/// The deterministic cleavage when the underlying functor is an
/// isofibration, otherwise the pair that cannot be lifted.
pub fn is_fibration(m: &RealizedMorphism) -> std::result::Result<Fibration, LiftFailure> {
    Ok(Fibration {
        map: m.clone(),
        cleavage: isofibration_cleavage(&m.fun)?,
    })
}

/// Position of `o` in the object table of an inclusion.
fn preimage_obj(incl: &GFunctor, o: Obj) -> Option<Obj> {
    incl.omap().iter().position(|&t| t == o).map(|k| Obj(k as u32))
}

fn preimage_mor(incl: &GFunctor, m: Mor) -> Option<Mor> {
    incl.mmap().iter().position(|&t| t == m).map(|k| Mor(k as u32))
}

impl Fibration {
    pub fn with_cleavage(map: RealizedMorphism, cleavage: Cleavage) -> Result<Fibration> {
        if *cleavage.functor() != map.fun {
            return Err(Error::Mismatch("cleavage of a different functor".into()));
        }
        Ok(Fibration { map, cleavage })
    }

    pub fn lift(&self, x: Obj, q: Mor) -> Mor {
        self.cleavage.lift(x, q)
    }

    /// `X_y`, with its inclusion into `X`.
    pub fn fibre(&self, y: Obj) -> Result<(Asm, GFunctor)> {
        let (sub, incl) = fibre(&self.map.fun, y);
        let x = &self.map.src;
        let asm = Assembly::new(sub, x.rtype.clone(), x.rfun.after(&incl)?)?;
        Ok((asm, incl))
    }

    /// `q*: X_y → X_{y'}`, realized by `(id, ‖q̄(x)‖)`.
    pub fn transport(&self, q: Mor) -> Result<RealizedMorphism> {
        let yb = &self.map.tgt.base;
        let xb = &self.map.src.base;
        let (src, si) = self.fibre(yb.src(q))?;
        let (tgt, ti) = self.fibre(yb.tgt(q))?;
        let missing = || Error::Structural("transport leaves the fibre".into());
        let omap = src
            .base
            .objects()
            .map(|o| preimage_obj(&ti, self.cleavage.transport(si.ob(o), q)).ok_or_else(missing))
            .collect::<Result<Vec<_>>>()?;
        let mmap = src
            .base
            .morphisms()
            .map(|m| {
                let v = si.mor(m);
                let l1 = self.lift(xb.src(v), q);
                let l2 = self.lift(xb.tgt(v), q);
                preimage_mor(&ti, xb.compose_path(&[xb.inv(l1), v, l2])).ok_or_else(missing)
            })
            .collect::<Result<Vec<_>>>()?;
        let fun = GFunctor::new(src.base.clone(), tgt.base.clone(), omap, mmap)?;
        let a = &self.map.src.rtype;
        let e = GFunctor::identity(a);
        let x = &self.map.src;
        let eps = NatIso::from_fn(&src.rfun, &tgt.rfun.after(&fun)?, |o| {
            x.rfun.mor(self.lift(si.ob(o), q))
        })?;
        RealizedMorphism::new(&src, &tgt, fun, e, eps)
    }

    /// Lift `φ: P∘F ⇒ G` to `F ⇒ φ*F` with `P∘φ*F = G`. The lift is
    /// realized by `(e, δ)` with `δ_w = ‖φ̄_w‖ε_w`, the lifted cell by
    /// `(eπ₁, γ)` with `γ₀ = ε` and `γ₁ = δ`.
    pub fn lift_2cell(&self, f: &RealizedMorphism, phi: &TwoCell, caps: &Caps) -> Result<(RealizedMorphism, TwoCell)> {
        let pf = self.map.after(f)?;
        if phi.src != pf {
            return Err(Error::Precondition("2-cell does not start at P∘F".into()));
        }
        let n = phi.natiso()?;
        let xb = &self.map.src.base;
        let wb = &f.src.base;
        let bar = |w: Obj| self.lift(f.fun.ob(w), n.at(w));
        let fun = GFunctor::from_fn(
            wb,
            xb,
            |w| xb.tgt(bar(w)),
            |m| xb.compose_path(&[xb.inv(bar(wb.src(m))), f.fun.mor(m), bar(wb.tgt(m))]),
        );
        let x = &self.map.src;
        let delta = NatIso::from_fn(f.eps.src(), &x.rfun.after(&fun)?, |w| {
            x.rtype.compose(x.rfun.mor(bar(w)), f.eps.at(w))
        })?;
        let lifted = RealizedMorphism::new(&f.src, x, fun, f.e.clone(), delta)?;
        let comps = NatIso::from_fn(&f.fun, &lifted.fun, bar)?;
        let cyl = cylinder(&f.src, caps)?;
        let e = f.e.after(&cyl.real.fst())?;
        let cell = assemble(f, &lifted, cyl, &comps, e, |w, one| {
            if one {
                lifted.eps.at(w)
            } else {
                f.eps.at(w)
            }
        })?;
        Ok((lifted, cell))
    }
}

/// An equivalence of assemblies: realized pseudoinverse with realized unit
/// `id ⇒ bwd∘fwd` and counit `fwd∘bwd ⇒ id`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub fwd: RealizedMorphism,
    pub bwd: RealizedMorphism,
    pub unit: TwoCell,
    pub counit: TwoCell,
}

impl Equivalence {
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, m) in [("forward map", &self.fwd), ("pseudoinverse", &self.bwd)] {
            for v in m.validate() {
                out.push(format!("{name}: {v}"));
            }
        }
        for (name, c) in [("unit", &self.unit), ("counit", &self.counit)] {
            if !c.is_valid() {
                out.push(format!("{name} does not validate"));
            }
        }
        let ok = |r: Result<RealizedMorphism>, want: &RealizedMorphism| r.map(|m| m == *want).unwrap_or(false);
        if !ok(self.bwd.after(&self.fwd), &self.unit.tgt) || self.unit.src != RealizedMorphism::identity(&self.fwd.src) {
            out.push("unit has the wrong boundary".into());
        }
        if !ok(self.fwd.after(&self.bwd), &self.counit.src) || self.counit.tgt != RealizedMorphism::identity(&self.fwd.tgt) {
            out.push("counit has the wrong boundary".into());
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn inverse(&self) -> Result<Equivalence> {
        Ok(Equivalence {
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
            unit: self.counit.inverse()?,
            counit: self.unit.inverse()?,
        })
    }
}

/// Equivalence data for `m`, if its functor is an equivalence with a
/// realizable pseudoinverse. Realizability does not depend on which
/// pseudoinverse is picked.
pub fn equivalence(m: &RealizedMorphism, caps: &Caps) -> Result<Option<Equivalence>> {
    let Ok(data) = equivalence_inverse(&m.fun) else {
        return Ok(None);
    };
    let Some(bwd) = find_realizer(&m.tgt, &m.src, &data.bwd, caps)? else {
        return Ok(None);
    };
    from_data(m, bwd, &data, caps).map(Some)
}

fn from_data(fwd: &RealizedMorphism, bwd: RealizedMorphism, data: &EquivalenceData, caps: &Caps) -> Result<Equivalence> {
    let gf = bwd.after(fwd)?;
    let fg = fwd.after(&bwd)?;
    let unit = TwoCell::canonical(&RealizedMorphism::identity(&fwd.src), &gf, &data.unit, caps)?;
    let counit = TwoCell::canonical(&fg, &RealizedMorphism::identity(&fwd.tgt), &data.counit.inverse(), caps)?;
    Ok(Equivalence {
        fwd: fwd.clone(),
        bwd,
        unit,
        counit,
    })
}

/// `𝒫X = Real(X^{𝐈₁})` with `r: X → 𝒫X` and `⟨s, t⟩: 𝒫X → X × X`.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub x: Asm,
    pub exp: Arc<WeakExp>,
    pub xx: ProductAsm,
    pub r: RealizedMorphism,
    pub st: RealizedMorphism,
    pub fibration: Fibration,
}

pub fn path_object(x: &Asm, caps: &Caps) -> Result<PathObject> {
    let i1 = Assembly::interval();
    let exp = Arc::new(weak_exponential(&i1, x, caps)?);
    let cyl = product(x, &i1, caps)?;
    let r = exp.transpose(&cyl, &cyl.fst(), caps)?;
    let (pi, ev) = exp.ev(caps)?;
    let at = |k: u32| -> Result<RealizedMorphism> {
        let end = RealizedMorphism::point(&i1, Obj(k)).after(&RealizedMorphism::to_terminal(&exp.asm))?;
        ev.after(&pi.pair(&RealizedMorphism::identity(&exp.asm), &end)?)
    };
    let xx = product(x, x, caps)?;
    let st = xx.pair(&at(0)?, &at(1)?)?;
    let lifts = Cleavage::from_fn(&st.fun, |o, q| pc6_lift(&exp, &xx, o, q))
        .map_err(|e| Error::Structural(format!("path object lift: {}", e.description)))?;
    let fibration = Fibration::with_cleavage(st.clone(), lifts)?;
    Ok(PathObject {
        x: x.clone(),
        exp,
        xx,
        r,
        st,
        fibration,
    })
}

/// The chosen lift of `(p₁, p₂)` at `(F, e, ε)`: the target is `(G, e, δ)`
/// with `G(i) = p₂F(i)p₁⁻¹` and `δⱼ = ‖pⱼ‖εⱼ`, the lift is `((p₁, p₂), id)`.
fn pc6_lift(exp: &WeakExp, xx: &ProductAsm, o: Obj, q: Mor) -> Option<Mor> {
    let x = &exp.y;
    let (xb, a) = (&x.base, &x.rtype);
    let (p1, p2) = xx.base.split_mor(q);
    let src = exp.object(o);
    let i = walking_iso();
    let arrow = i.hom(Obj(0), Obj(1))[0];
    let gi = xb.compose_path(&[xb.inv(p1), src.fun.mor(arrow), p2]);
    let g = morphism_path(xb, gi).retyped(&i, xb).ok()?;
    let ends = [p1, p2];
    let delta = NatIso::from_fn(src.eps.src(), &x.rfun.after(&g).ok()?, |j| {
        a.compose(x.rfun.mor(ends[j.idx()]), src.eps.at(j))
    })
    .ok()?;
    let psi = NatIso::from_fn(&src.fun, &g, |j| ends[j.idx()]).ok()?;
    let t = exp.object_of(&g, src.e, &delta)?;
    exp.morphism_of(o, t, &psi, exp.real.grpd.id(src.e))
}

impl PathObject {
    pub fn s(&self) -> Result<RealizedMorphism> {
        self.xx.fst().after(&self.st)
    }

    pub fn t(&self) -> Result<RealizedMorphism> {
        self.xx.snd().after(&self.st)
    }

    /// `r` with pseudoinverse `s`; `s∘r = id` and `r∘s ⇒ id` has components
    /// `(ψ, f)` with `ψ = (id, F(i))` and `fⱼ = εⱼ⁻¹‖ψⱼ‖`.
    pub fn equivalence(&self, caps: &Caps) -> Result<Equivalence> {
        let s = self.s()?;
        let rs = self.r.after(&s)?;
        let (pb, a) = (&self.exp.asm.base, &self.x.rtype);
        let i = walking_iso();
        let arrow = i.hom(Obj(0), Obj(1))[0];
        let xb = &self.x.base;
        let comps = pb
            .objects()
            .map(|o| {
                let obj = self.exp.object(o);
                let from = self.exp.object(rs.fun.ob(o));
                let psi = NatIso::from_fn(&from.fun, &obj.fun, |j| {
                    if j.idx() == 0 {
                        xb.id(obj.fun.ob(j))
                    } else {
                        obj.fun.mor(arrow)
                    }
                })?;
                let f = NatIso::from_fn(self.exp.real.functor(from.e), self.exp.real.functor(obj.e), |j| {
                    a.compose(a.inv(obj.eps.at(j)), self.x.rfun.mor(psi.at(j)))
                })?;
                let f = self
                    .exp
                    .real
                    .mor_of(&f)
                    .ok_or_else(|| Error::Structural("path homotopy realizer missing".into()))?;
                self.exp
                    .morphism_of(rs.fun.ob(o), o, &psi, f)
                    .ok_or_else(|| Error::Structural("path homotopy component missing".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let counit = NatIso::new(rs.fun.clone(), GFunctor::identity(pb), comps)?;
        let id_x = RealizedMorphism::identity(&self.x);
        let sr = s.after(&self.r)?;
        let unit = TwoCell::canonical(&id_x, &sr, &NatIso::identity(&id_x.fun), caps)?;
        let counit = TwoCell::canonical(&rs, &RealizedMorphism::identity(&self.exp.asm), &counit, caps)?;
        Ok(Equivalence {
            fwd: self.r.clone(),
            bwd: s,
            unit,
            counit,
        })
    }
}

/// Section of an acyclic fibration `F` from a pseudoinverse `G` and the
/// counit `ψ: FG ⇒ id`: `Sy = ψ_y* Gy`, realized by `(e, ‖ψ̄_y‖ε_y)`.
pub fn pc7_section(f: &Fibration, eq: &Equivalence) -> Result<RealizedMorphism> {
    if eq.fwd != f.map {
        return Err(Error::Precondition("equivalence data for another map".into()));
    }
    let g = &eq.bwd;
    let psi = eq.counit.natiso()?;
    let x = &f.map.src;
    let (xb, yb) = (&x.base, &f.map.tgt.base);
    let bar = |y: Obj| f.lift(g.fun.ob(y), psi.at(y));
    let fun = GFunctor::from_fn(
        yb,
        xb,
        |y| xb.tgt(bar(y)),
        |q| xb.compose_path(&[xb.inv(bar(yb.src(q))), g.fun.mor(q), bar(yb.tgt(q))]),
    );
    let eps = NatIso::from_fn(g.eps.src(), &x.rfun.after(&fun)?, |y| {
        x.rtype.compose(x.rfun.mor(bar(y)), g.eps.at(y))
    })?;
    RealizedMorphism::new(&f.map.tgt, x, fun, g.e.clone(), eps)
}

/// `F*Y` for `f: X → Z`, `g: Y → Z`, with realizer type `A × B`.
#[derive(Clone, Debug)]
pub struct PullbackAsm {
    pub asm: Asm,
    pub pb: Pullback,
    pub real: Product,
    pub f: RealizedMorphism,
    pub g: RealizedMorphism,
    pub p1: RealizedMorphism,
    pub p2: RealizedMorphism,
}

pub fn pullback_asm(f: &RealizedMorphism, g: &RealizedMorphism, caps: &Caps) -> Result<PullbackAsm> {
    if !f.tgt.same(&g.tgt) {
        return Err(Error::Mismatch("pullback of maps with different codomains".into()));
    }
    let (x, y) = (&f.src, &g.src);
    let pb = pullback(&f.fun, &g.fun, caps)?;
    let real = product_capped(&x.rtype, &y.rtype, caps)?;
    let rfun = GFunctor::from_fn(
        &pb.grpd,
        &real.grpd,
        |o| {
            let (a, b) = pb.split_obj(o);
            real.obj(x.rfun.ob(a), y.rfun.ob(b))
        },
        |m| {
            let (p, q) = pb.split_mor(m);
            real.mor(x.rfun.mor(p), y.rfun.mor(q))
        },
    );
    let asm = Assembly::new(pb.grpd.clone(), real.grpd.clone(), rfun)?;
    let proj = |fun: GFunctor, e: GFunctor, tgt: &Asm| -> Result<RealizedMorphism> {
        let eps = NatIso::identity(&tgt.rfun.after(&fun)?);
        RealizedMorphism::new(&asm, tgt, fun, e, eps)
    };
    let p1 = proj(pb.p1(), real.fst(), x)?;
    let p2 = proj(pb.p2(), real.snd(), y)?;
    Ok(PullbackAsm {
        asm,
        pb,
        real,
        f: f.clone(),
        g: g.clone(),
        p1,
        p2,
    })
}

impl PullbackAsm {
    /// `[S, T]`, realized by `⟨e, e'⟩` with paired `ε`.
    pub fn universal(&self, s: &RealizedMorphism, t: &RealizedMorphism) -> Result<RealizedMorphism> {
        let fun = self.pb.universal(&s.fun, &t.fun)?;
        let e = self.real.pair(&s.e, &t.e)?;
        let eps = self.real.pair_natiso(&s.eps, &t.eps)?;
        let tgt = self.asm.rfun.after(&fun)?;
        let eps = NatIso::new(eps.src().clone(), tgt, eps.comps().to_vec())?;
        RealizedMorphism::new(&s.src, &self.asm, fun, e, eps)
    }

    /// Number of functors `u` with `p₁u = S` and `p₂u = T`.
    pub fn count_factorisations(&self, s: &GFunctor, t: &GFunctor, caps: &Caps) -> Result<usize> {
        let obj = |o: Obj, c: Obj| self.pb.split_obj(c) == (s.ob(o), t.ob(o));
        let mor = |m: Mor, c: Mor| self.pb.split_mor(c) == (s.mor(m), t.mor(m));
        let filter = FunctorFilter {
            obj: Some(&obj),
            mor: Some(&mor),
        };
        Ok(enumerate::functors_filtered(s.dom(), &self.pb.grpd, filter, caps.max_morphisms)?.len())
    }
}

/// The pseudopullback `F ↓ G` with realizer type `(A × B) × C^{𝕀₁}`; the
/// third realizer of `(x, y, r)` is the path `‖r‖`.
#[derive(Clone, Debug)]
pub struct PseudoPullbackAsm {
    pub asm: Asm,
    pub comma: IsoComma,
    pub ab: Product,
    pub real: Product,
    pub paths: Arc<Exponential>,
    pub f: RealizedMorphism,
    pub g: RealizedMorphism,
    pub p1: RealizedMorphism,
    pub p2: RealizedMorphism,
}

pub fn pseudopullback_asm(f: &RealizedMorphism, g: &RealizedMorphism, caps: &Caps) -> Result<PseudoPullbackAsm> {
    if !f.tgt.same(&g.tgt) {
        return Err(Error::Mismatch("pseudopullback of maps with different codomains".into()));
    }
    let (x, y, z) = (&f.src, &g.src, &f.tgt);
    let comma = iso_comma(&f.fun, &g.fun, caps)?;
    let ab = product_capped(&x.rtype, &y.rtype, caps)?;
    let paths = exponential(&walking_iso(), &z.rtype, caps)?;
    let real = product_capped(&ab.grpd, &paths.grpd, caps)?;
    let c = &z.rtype;
    let path_of = |r: Mor| -> Result<Obj> {
        let p = morphism_path(c, z.rfun.mor(r)).retyped(&paths.base, c)?;
        paths
            .obj_of(&p)
            .ok_or_else(|| Error::Structural("path realizer missing".into()))
    };
    let mut omap = Vec::new();
    for o in comma.grpd.objects() {
        let (a, b, r) = comma.split_obj(o);
        omap.push(real.obj(ab.obj(x.rfun.ob(a), y.rfun.ob(b)), path_of(r)?));
    }
    let mut mmap = Vec::new();
    for m in comma.grpd.morphisms() {
        let (p, q) = comma.split_mor(m);
        let (_, _, r) = comma.split_obj(comma.grpd.src(m));
        let (_, _, r2) = comma.split_obj(comma.grpd.tgt(m));
        let (s, t) = (paths.functor(path_of(r)?), paths.functor(path_of(r2)?));
        let comps = [z.rfun.mor(f.fun.mor(p)), z.rfun.mor(g.fun.mor(q))];
        let n = NatIso::from_fn(s, t, |j| comps[j.idx()])?;
        let nm = paths
            .mor_of(&n)
            .ok_or_else(|| Error::Structural("path square missing".into()))?;
        mmap.push(real.mor(ab.mor(x.rfun.mor(p), y.rfun.mor(q)), nm));
    }
    let rfun = GFunctor::new(comma.grpd.clone(), real.grpd.clone(), omap, mmap)?;
    let asm = Assembly::new(comma.grpd.clone(), real.grpd.clone(), rfun)?;
    let proj = |fun: GFunctor, e: GFunctor, tgt: &Asm| -> Result<RealizedMorphism> {
        let eps = NatIso::identity(&tgt.rfun.after(&fun)?);
        RealizedMorphism::new(&asm, tgt, fun, e.after(&real.fst())?, eps)
    };
    let p1 = proj(comma.p1(), ab.fst(), x)?;
    let p2 = proj(comma.p2(), ab.snd(), y)?;
    Ok(PseudoPullbackAsm {
        asm,
        comma,
        ab,
        real,
        paths,
        f: f.clone(),
        g: g.clone(),
        p1,
        p2,
    })
}

impl PseudoPullbackAsm {
    /// `[S, T, ψ]` for `ψ: F∘S ⇒ G∘T`, realized by `⟨e^S, e^T, λe^ψ⟩`.
    pub fn universal(&self, s: &RealizedMorphism, t: &RealizedMorphism, psi: &TwoCell) -> Result<RealizedMorphism> {
        let n = psi.natiso()?;
        let fun = self.comma.universal(&s.fun, &t.fun, &n)?;
        let c = &self.f.tgt.rtype;
        let le = self
            .paths
            .curry(&psi.cyl.real, &psi.cell.e.retyped(&psi.cyl.real.grpd, c)?)?;
        let e = self.real.pair(&self.ab.pair(&s.e, &t.e)?, &le)?;
        let w = &s.src;
        let lhs = e.after(&w.rfun)?;
        let rhs = self.asm.rfun.after(&fun)?;
        let mut comps = Vec::with_capacity(w.base.object_count());
        for o in w.base.objects() {
            let (_, path) = self.real.split_obj(rhs.ob(o));
            let (_, from) = self.real.split_obj(lhs.ob(o));
            let ends = [
                psi.cell.eps.at(psi.cyl.base.obj(o, Obj(0))),
                psi.cell.eps.at(psi.cyl.base.obj(o, Obj(1))),
            ];
            let nat = NatIso::from_fn(self.paths.functor(from), self.paths.functor(path), |j| ends[j.idx()])?;
            let nm = self
                .paths
                .mor_of(&nat)
                .ok_or_else(|| Error::Structural("realizer square missing".into()))?;
            comps.push(self.real.mor(self.ab.mor(s.eps.at(o), t.eps.at(o)), nm));
        }
        let eps = NatIso::new(lhs, rhs, comps)?;
        RealizedMorphism::new(w, &self.asm, fun, e, eps)
    }

    /// Number of functors `u` with `p₁u = S`, `p₂u = T` and generic∘u = ψ.
    pub fn count_factorisations(&self, s: &GFunctor, t: &GFunctor, psi: &NatIso, caps: &Caps) -> Result<usize> {
        let obj = |o: Obj, c: Obj| self.comma.split_obj(c) == (s.ob(o), t.ob(o), psi.at(o));
        let mor = |m: Mor, c: Mor| self.comma.split_mor(c) == (s.mor(m), t.mor(m));
        let filter = FunctorFilter {
            obj: Some(&obj),
            mor: Some(&mor),
        };
        Ok(enumerate::functors_filtered(s.dom(), &self.comma.grpd, filter, caps.max_morphisms)?.len())
    }
}

/// `T: X → Y` with `G∘T = F`, `Tx = ψ_{Fx}* HFx`, realized by
/// `(e^H e^F, ‖ψ̄‖ε^H e^H(ε^F))`.
fn pc8_lift(g: &Fibration, eq: &Equivalence, f: &RealizedMorphism) -> Result<RealizedMorphism> {
    let h = &eq.bwd;
    let psi = eq.counit.natiso()?;
    let y = &g.map.src;
    let (xb, yb) = (&f.src.base, &y.base);
    let bar = |x: Obj| {
        let z = f.fun.ob(x);
        g.lift(h.fun.ob(z), psi.at(z))
    };
    let fun = GFunctor::from_fn(
        xb,
        yb,
        |x| yb.tgt(bar(x)),
        |p| yb.compose_path(&[yb.inv(bar(xb.src(p))), h.fun.mor(f.fun.mor(p)), bar(xb.tgt(p))]),
    );
    let e = h.e.after(&f.e)?;
    let b = &y.rtype;
    let eps = NatIso::from_fn(&e.after(&f.src.rfun)?, &y.rfun.after(&fun)?, |x| {
        let z = f.fun.ob(x);
        b.compose_path(&[h.e.mor(f.eps.at(x)), h.eps.at(z), y.rfun.mor(bar(x))])
    })?;
    RealizedMorphism::new(&f.src, y, fun, e, eps)
}

/// The pseudoinverse `S = [X, T]` of `F*G: F*Y → X` and
/// `σ: id ⇒ S∘F*G` with components `(id_x, σ_y)`.
pub struct Pc8 {
    pub pullback: PullbackAsm,
    pub section: RealizedMorphism,
    pub sigma: TwoCell,
}

/// `σ_y = m∘u⁻¹` where `m = ψ̄_{Gy}∘φ_y` and `u` is the automorphism of `y`
/// with `G(u) = G(m)`, so that `σ_y` is vertical.
pub fn pc8_pseudoinverse(g: &Fibration, eq: &Equivalence, f: &RealizedMorphism, caps: &Caps) -> Result<Pc8> {
    if eq.fwd != g.map {
        return Err(Error::Precondition("equivalence data for another map".into()));
    }
    let t = pc8_lift(g, eq, f)?;
    let pullback = pullback_asm(f, &g.map, caps)?;
    let section = pullback.universal(&RealizedMorphism::identity(&f.src), &t)?;
    let proj = &pullback.p1;
    let sfg = section.after(proj)?;
    let psi = eq.counit.natiso()?;
    let phi = eq.unit.natiso()?;
    let h = &eq.bwd;
    let (yb, zb) = (&g.map.src.base, &g.map.tgt.base);
    let gf = &g.map.fun;
    let pb = &pullback.pb;
    let mut comps = Vec::with_capacity(pb.grpd.object_count());
    for o in pb.grpd.objects() {
        let (x, y) = pb.split_obj(o);
        let z = gf.ob(y);
        let m = yb.compose(g.lift(h.fun.ob(z), psi.at(z)), phi.at(y));
        let gm = gf.mor(m);
        let u = *yb
            .hom(y, y)
            .iter()
            .find(|&&u| gf.mor(u) == gm)
            .ok_or_else(|| Error::Precondition("fibration is not full on automorphisms".into()))?;
        let sigma_y = yb.compose(m, yb.inv(u));
        debug_assert!(zb.is_identity(gf.mor(sigma_y)));
        comps.push(
            pb.mor(f.src.base.id(x), sigma_y)
                .ok_or_else(|| Error::Structural("σ component is not in the pullback".into()))?,
        );
    }
    let nat = NatIso::new(GFunctor::identity(&pb.grpd), sfg.fun.clone(), comps)?;
    let id = RealizedMorphism::identity(&pullback.asm);
    let cyl = cylinder(&pullback.asm, caps)?;
    let e = cyl.real.fst();
    let r = &pullback.asm;
    let sigma = assemble(&id, &sfg, cyl, &nat, e, |o, one| {
        if one {
            r.rfun.mor(nat.at(o))
        } else {
            r.rtype.id(r.rfun.ob(o))
        }
    })?;
    Ok(Pc8 {
        pullback,
        section,
        sigma,
    })
}

/// `f*h: f*A → f*B` for maps `pa: A → X`, `pb: B → X`, `h: A → B` over `X`
/// and `f: Y → X`.
pub fn pullback_map(
    f: &RealizedMorphism,
    pa: &RealizedMorphism,
    pb: &RealizedMorphism,
    h: &RealizedMorphism,
    caps: &Caps,
) -> Result<(PullbackAsm, PullbackAsm, RealizedMorphism)> {
    if pb.after(h)? != *pa {
        return Err(Error::Precondition("map is not over the base".into()));
    }
    let fa = pullback_asm(f, pa, caps)?;
    let fb = pullback_asm(f, pb, caps)?;
    let m = fb.universal(&fa.p1, &h.after(&fa.p2)?)?;
    Ok((fa, fb, m))
}

/// `(Y, A, ‖−‖∘G)` for an equivalence `F: X ⇄ Y: G` of groupoids, with `G`
/// realized by `(id, id)` and `F` by `(id, ‖φ_x‖)`.
pub fn transfer_structure(x: &Asm, eq: &EquivalenceData, caps: &Caps) -> Result<(Asm, Equivalence)> {
    let bad = eq.validate();
    if let Some(v) = bad.first() {
        return Err(Error::Precondition(format!("equivalence data: {v}")));
    }
    if !gral_core::groupoid::same_groupoid(eq.fwd.dom(), &x.base) {
        return Err(Error::Mismatch("equivalence out of another groupoid".into()));
    }
    let yb = eq.fwd.cod().clone();
    let y = Assembly::new(yb, x.rtype.clone(), x.rfun.after(&eq.bwd)?)?;
    let id_a = GFunctor::identity(&x.rtype);
    let bwd = RealizedMorphism::new(&y, x, eq.bwd.clone(), id_a.clone(), NatIso::identity(&y.rfun))?;
    let eps = NatIso::from_fn(&x.rfun, &y.rfun.after(&eq.fwd)?, |o| x.rfun.mor(eq.unit.at(o)))?;
    let fwd = RealizedMorphism::new(x, &y, eq.fwd.clone(), id_a, eps)?;
    let e = from_data(&fwd, bwd, eq, caps)?;
    Ok((y, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::discrete_assembly;
    use gral_core::groupoid::{codiscrete, cyclic};

    #[test]
    fn path_object_factors_the_diagonal() {
        let caps = Caps::default();
        for x in [discrete_assembly(&cyclic(2, "z")), Assembly::chaotic(&cyclic(2, "z"), &walking_iso(), Obj(0))] {
            let po = path_object(&x, &caps).unwrap();
            assert!(po.r.is_valid() && po.st.is_valid());
            let diag = po.xx.pair(&RealizedMorphism::identity(&x), &RealizedMorphism::identity(&x)).unwrap();
            assert_eq!(po.st.after(&po.r).unwrap(), diag);
            assert!(po.fibration.cleavage.is_normal());
            let eq = po.equivalence(&caps).unwrap();
            assert!(eq.is_valid(), "{:?}", eq.validate());
        }
    }

    #[test]
    fn map_to_terminal_is_a_fibration() {
        let x = discrete_assembly(&cyclic(3, "w"));
        assert!(is_fibration(&RealizedMorphism::to_terminal(&x)).is_ok());
        let p = RealizedMorphism::point(&discrete_assembly(&walking_iso()), Obj(0));
        assert!(is_fibration(&p).is_err());
    }

    #[test]
    fn pc7_and_pc8_on_a_codiscrete_cover() {
        let caps = Caps::default();
        let ids: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let x = discrete_assembly(&codiscrete(&ids));
        let one = Assembly::terminal();
        let f = RealizedMorphism::to_terminal(&x);
        let fib = is_fibration(&f).unwrap();
        let eq = equivalence(&f, &caps).unwrap().unwrap();
        assert!(eq.is_valid(), "{:?}", eq.validate());
        let s = pc7_section(&fib, &eq).unwrap();
        assert_eq!(f.after(&s).unwrap(), RealizedMorphism::identity(&one));
        let w = discrete_assembly(&cyclic(2, "z"));
        let k = RealizedMorphism::to_terminal(&w);
        let pc8 = pc8_pseudoinverse(&fib, &eq, &k, &caps).unwrap();
        let back = pc8.pullback.p1.after(&pc8.section).unwrap();
        assert_eq!(back, RealizedMorphism::identity(&w));
        assert!(pc8.sigma.is_valid());
    }

    #[test]
    fn transport_and_lift_of_identity() {
        let caps = Caps::default();
        let x = discrete_assembly(&cyclic(2, "z"));
        let f = RealizedMorphism::to_terminal(&x);
        let fib = is_fibration(&f).unwrap();
        let id = RealizedMorphism::identity(&x);
        let cell = TwoCell::identity(&f, &caps).unwrap();
        let (lifted, c) = fib.lift_2cell(&id, &cell, &caps).unwrap();
        assert_eq!(lifted, id);
        assert!(c.is_valid());
        let q = f.tgt.base.id(Obj(0));
        assert!(fib.transport(q).unwrap().is_valid());
    }
}
