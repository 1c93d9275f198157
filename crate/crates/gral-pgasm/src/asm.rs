//! Partitioned groupoidal assemblies over finite groupoids, realized
//! morphisms, finite products and modesty.
//!
//! The realizer category is `Gpd` with the walking-isomorphism interval, so
//! `Π(A)` is identified with `A` itself and a realizability functor is a
//! functor `X → A`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use gral_core::construct::{product_capped, Product};
use gral_core::enumerate;
use gral_core::groupoid::{same_groupoid, terminal, walking_iso, Grpd, Mor, Obj};
use gral_core::{Caps, Error, GFunctor, NatIso, Result};

/// `(X, A, ‖−‖)`.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub base: Grpd,
    pub rtype: Grpd,
    pub rfun: GFunctor,
}

pub type Asm = Arc<Assembly>;

impl Assembly {
    pub fn new(base: Grpd, rtype: Grpd, rfun: GFunctor) -> Result<Asm> {
        if !same_groupoid(rfun.dom(), &base) || !same_groupoid(rfun.cod(), &rtype) {
            return Err(Error::Mismatch("realizability functor has the wrong boundary".into()));
        }
        let bad = rfun.validate();
        if let Some(v) = bad.first() {
            return Err(Error::Structural(format!("realizability functor: {v:?}")));
        }
        let rfun = rfun.retyped(&base, &rtype)?;
        Ok(Arc::new(Assembly { base, rtype, rfun }))
    }

    /// `(X, A, ‖−‖)` from a functor.
    pub fn of(rfun: &GFunctor) -> Asm {
        Arc::new(Assembly {
            base: rfun.dom().clone(),
            rtype: rfun.cod().clone(),
            rfun: rfun.clone(),
        })
    }

    /// `(1, 𝕀₀, ∗ ↦ ∗)`.
    pub fn terminal() -> Asm {
        let t = terminal();
        Assembly::of(&GFunctor::identity(&t))
    }

    /// `(𝐈₁, 𝕀₁, id)`.
    pub fn interval() -> Asm {
        Assembly::of(&GFunctor::identity(&walking_iso()))
    }

    /// Every object realized by the point `a0`, every morphism by its identity.
    pub fn chaotic(base: &Grpd, rtype: &Grpd, a0: Obj) -> Asm {
        Assembly::of(&GFunctor::constant(base, rtype, a0))
    }

    pub fn same(&self, other: &Assembly) -> bool {
        same_groupoid(&self.base, &other.base)
            && same_groupoid(&self.rtype, &other.rtype)
            && self.rfun == other.rfun
    }

    pub fn modesty(&self) -> Modesty {
        modesty(&self.rfun)
    }

    pub fn is_modest(&self) -> bool {
        self.modesty().is_modest()
    }
}

/// Why a realizability functor fails to be fully faithful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modesty {
    Modest,
    /// Two parallel morphisms with the same realizer.
    NotFaithful { first: Mor, second: Mor },
    /// A realizer path between realized objects with no morphism above it.
    NotFull { from: Obj, to: Obj, path: Mor },
}

impl Modesty {
    pub fn is_modest(&self) -> bool {
        matches!(self, Modesty::Modest)
    }
}

impl fmt::Display for Modesty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modesty::Modest => write!(f, "modest"),
            Modesty::NotFaithful { first, second } => {
                write!(f, "morphisms {} and {} share a realizer", first.0, second.0)
            }
            Modesty::NotFull { from, to, path } => write!(
                f,
                "realizer path {} between objects {} and {} is not realized",
                path.0, from.0, to.0
            ),
        }
    }
}

/// Full faithfulness of a functor, with the first violation found.
pub fn modesty(rfun: &GFunctor) -> Modesty {
    let x = rfun.dom();
    let a = rfun.cod();
    for from in x.objects() {
        for to in x.objects() {
            let hom = x.hom(from, to);
            let mut hit = Vec::with_capacity(hom.len());
            for &m in hom {
                let r = rfun.mor(m);
                if let Some(&(first, _)) = hit.iter().find(|(_, s)| *s == r) {
                    return Modesty::NotFaithful { first, second: m };
                }
                hit.push((m, r));
            }
            for &path in a.hom(rfun.ob(from), rfun.ob(to)) {
                if !hit.iter().any(|&(_, r)| r == path) {
                    return Modesty::NotFull { from, to, path };
                }
            }
        }
    }
    Modesty::Modest
}

/// A functor `F: X → Y` with a realizer `(e, ε)`,
/// `ε: e ∘ ‖−‖_X ⇒ ‖−‖_Y ∘ F`.
///
/// Equality compares the endpoints and the underlying functor only.
#[derive(Clone, Debug)]
pub struct RealizedMorphism {
    pub src: Asm,
    pub tgt: Asm,
    pub fun: GFunctor,
    pub e: GFunctor,
    pub eps: NatIso,
}

impl PartialEq for RealizedMorphism {
    fn eq(&self, other: &Self) -> bool {
        same_groupoid(&self.src.base, &other.src.base)
            && same_groupoid(&self.tgt.base, &other.tgt.base)
            && self.fun == other.fun
    }
}

impl Eq for RealizedMorphism {}

impl Hash for RealizedMorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fun.hash(state);
    }
}

impl RealizedMorphism {
    /// Assemble and validate.
    pub fn new(src: &Asm, tgt: &Asm, fun: GFunctor, e: GFunctor, eps: NatIso) -> Result<Self> {
        let m = RealizedMorphism {
            src: src.clone(),
            tgt: tgt.clone(),
            fun,
            e,
            eps,
        };
        let report = m.validate();
        if let Some(v) = report.first() {
            return Err(Error::Mismatch(format!("realizer does not validate: {v}")));
        }
        Ok(m)
    }

    /// Like [`RealizedMorphism::new`] without the check.
    pub fn unchecked(src: &Asm, tgt: &Asm, fun: GFunctor, e: GFunctor, eps: NatIso) -> Self {
        RealizedMorphism {
            src: src.clone(),
            tgt: tgt.clone(),
            fun,
            e,
            eps,
        }
    }

    /// Empty iff `ε` is a natural isomorphism `e∘‖−‖_X ⇒ ‖−‖_Y∘F`.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (x, y) = (&self.src, &self.tgt);
        if !same_groupoid(self.fun.dom(), &x.base) || !same_groupoid(self.fun.cod(), &y.base) {
            out.push("functor boundary differs from the assemblies".into());
            return out;
        }
        if !same_groupoid(self.e.dom(), &x.rtype) || !same_groupoid(self.e.cod(), &y.rtype) {
            out.push("realizer map boundary differs from the realizer types".into());
            return out;
        }
        for v in self.fun.validate() {
            out.push(format!("functor: {v:?}"));
        }
        for v in self.e.validate() {
            out.push(format!("realizer map: {v:?}"));
        }
        if !out.is_empty() {
            return out;
        }
        let lhs = self.e.after(&x.rfun).expect("matching boundary");
        let rhs = y.rfun.after(&self.fun).expect("matching boundary");
        if *self.eps.src() != lhs {
            out.push("ε has the wrong source functor".into());
        }
        if *self.eps.tgt() != rhs {
            out.push("ε has the wrong target functor".into());
        }
        if out.is_empty() {
            for v in self.eps.validate() {
                out.push(format!("ε: {v:?}"));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `(id, id) ⊩ id`.
    pub fn identity(x: &Asm) -> Self {
        RealizedMorphism {
            src: x.clone(),
            tgt: x.clone(),
            fun: GFunctor::identity(&x.base),
            e: GFunctor::identity(&x.rtype),
            eps: NatIso::identity(&x.rfun),
        }
    }

    /// `self ∘ m`, realized by `(e'e, (ε'∗F)∘(e'∗ε))`.
    pub fn after(&self, m: &RealizedMorphism) -> Result<Self> {
        if !m.tgt.same(&self.src) {
            return Err(Error::Mismatch("composing morphisms with different boundary".into()));
        }
        let fun = self.fun.after(&m.fun)?;
        let e = self.e.after(&m.e)?;
        let outer = self.eps.whisker_left(&m.fun)?;
        let inner = m.eps.whisker_right(&self.e)?;
        let eps = outer.after(&inner)?;
        Ok(RealizedMorphism {
            src: m.src.clone(),
            tgt: self.tgt.clone(),
            fun,
            e,
            eps,
        })
    }

    /// The unique morphism `X → 1`.
    pub fn to_terminal(x: &Asm) -> Self {
        let one = Assembly::terminal();
        let fun = GFunctor::constant(&x.base, &one.base, Obj(0));
        let e = GFunctor::constant(&x.rtype, &one.rtype, Obj(0));
        let eps = NatIso::identity(&GFunctor::constant(&x.base, &one.rtype, Obj(0)));
        RealizedMorphism {
            src: x.clone(),
            tgt: one,
            fun,
            e,
            eps,
        }
    }

    /// The point `1 → X` at `x`, realized by `‖x‖`.
    pub fn point(x: &Asm, o: Obj) -> Self {
        let one = Assembly::terminal();
        let fun = GFunctor::constant(&one.base, &x.base, o);
        let e = GFunctor::constant(&one.rtype, &x.rtype, x.rfun.ob(o));
        let eps = NatIso::identity(&e);
        RealizedMorphism {
            src: one,
            tgt: x.clone(),
            fun,
            e,
            eps,
        }
    }
}

/// Least realizer of `fun: X → Y`, scanning realizer maps and then
/// natural isomorphisms in enumeration order.
pub fn find_realizer(x: &Asm, y: &Asm, fun: &GFunctor, caps: &Caps) -> Result<Option<RealizedMorphism>> {
    let target = y.rfun.after(fun)?;
    for e in enumerate::functors(&x.rtype, &y.rtype, caps.max_morphisms)? {
        let src = e.after(&x.rfun)?;
        if let Some(eps) = first_natiso(&src, &target) {
            return Ok(Some(RealizedMorphism::unchecked(x, y, fun.clone(), e, eps)));
        }
    }
    Ok(None)
}

/// The least natural isomorphism `f ⇒ g`, if any.
pub fn first_natiso(f: &GFunctor, g: &GFunctor) -> Option<NatIso> {
    let dom = f.dom();
    let cod = f.cod();
    let comps = enumerate::components(dom);
    let mut tab = vec![Mor(0); dom.object_count()];
    for c in &comps {
        let found = cod.hom(f.ob(c.root), g.ob(c.root)).iter().copied().find(|&a| {
            c.generators
                .iter()
                .all(|&s| cod.compose(g.mor(s), a) == cod.compose(a, f.mor(s)))
        })?;
        for &o in &c.objects {
            let t = c.star[&o];
            tab[o.idx()] = cod.compose_path(&[cod.inv(f.mor(t)), found, g.mor(t)]);
        }
    }
    NatIso::new(f.clone(), g.clone(), tab).ok()
}

/// `X × Y` with realizer type `A × B` and `‖−‖ = ‖−‖_X × ‖−‖_Y`.
#[derive(Clone, Debug)]
pub struct ProductAsm {
    pub asm: Asm,
    pub left: Asm,
    pub right: Asm,
    pub base: Product,
    pub real: Product,
}

pub fn product(x: &Asm, y: &Asm, caps: &Caps) -> Result<ProductAsm> {
    let base = product_capped(&x.base, &y.base, caps)?;
    let real = product_capped(&x.rtype, &y.rtype, caps)?;
    let rfun = real.times(&base, &x.rfun, &y.rfun)?;
    Ok(ProductAsm {
        asm: Assembly::new(base.grpd.clone(), real.grpd.clone(), rfun)?,
        left: x.clone(),
        right: y.clone(),
        base,
        real,
    })
}

impl ProductAsm {
    /// `π₁`, realized by `(π₁, id)`.
    pub fn fst(&self) -> RealizedMorphism {
        let fun = self.base.fst();
        let eps = NatIso::identity(&self.left.rfun.after(&fun).expect("product boundary"));
        RealizedMorphism::unchecked(&self.asm, &self.left, fun, self.real.fst(), eps)
    }

    pub fn snd(&self) -> RealizedMorphism {
        let fun = self.base.snd();
        let eps = NatIso::identity(&self.right.rfun.after(&fun).expect("product boundary"));
        RealizedMorphism::unchecked(&self.asm, &self.right, fun, self.real.snd(), eps)
    }

    /// `⟨f, g⟩`, realized by `(⟨e, e'⟩, ⟨ε, ε'⟩)`.
    pub fn pair(&self, f: &RealizedMorphism, g: &RealizedMorphism) -> Result<RealizedMorphism> {
        if !f.src.same(&g.src) || !f.tgt.same(&self.left) || !g.tgt.same(&self.right) {
            return Err(Error::Mismatch("pairing morphisms with the wrong boundary".into()));
        }
        let fun = self.base.pair(&f.fun, &g.fun)?;
        let e = self.real.pair(&f.e, &g.e)?;
        let eps = self.real.pair_natiso(&f.eps, &g.eps)?;
        Ok(RealizedMorphism::unchecked(&f.src, &self.asm, fun, e, eps))
    }

    /// `f × g` for `f: X' → X`, `g: Y' → Y`, into this product.
    pub fn times(&self, dom: &ProductAsm, f: &RealizedMorphism, g: &RealizedMorphism) -> Result<RealizedMorphism> {
        self.pair(&f.after(&dom.fst())?, &g.after(&dom.snd())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gral_core::groupoid::{cyclic, discrete};

    fn z2_asm() -> Asm {
        let z = cyclic(2, "z");
        Assembly::of(&GFunctor::identity(&z))
    }

    #[test]
    fn identities_and_composites_validate() {
        let x = z2_asm();
        let id = RealizedMorphism::identity(&x);
        assert!(id.is_valid());
        assert!(id.after(&id).unwrap().is_valid());
        let t = RealizedMorphism::to_terminal(&x);
        assert!(t.is_valid());
        assert!(t.after(&id).unwrap().is_valid());
    }

    #[test]
    fn broken_component_is_reported() {
        let z = cyclic(2, "z");
        let x = Assembly::chaotic(&walking_iso(), &z, Obj(0));
        let id = RealizedMorphism::identity(&x);
        let g = z.morphisms().find(|&m| !z.is_identity(m)).unwrap();
        let one = z.id(Obj(0));
        let eps = NatIso::new(id.eps.src().clone(), id.eps.tgt().clone(), vec![g, one]).unwrap();
        let bad = RealizedMorphism { eps, ..id };
        assert!(bad.validate().iter().any(|v| v.contains("Natural")), "{:?}", bad.validate());
    }

    #[test]
    fn modesty_examples() {
        assert!(Assembly::terminal().is_modest());
        assert!(z2_asm().is_modest());
        let ids = vec!["a".to_string(), "b".to_string()];
        let chaotic = Assembly::chaotic(&discrete(&ids), &terminal(), Obj(0));
        assert!(matches!(chaotic.modesty(), Modesty::NotFull { .. }));
    }

    #[test]
    fn product_projections_and_pairing() {
        let caps = Caps::default();
        let x = z2_asm();
        let y = Assembly::interval();
        let p = product(&x, &y, &caps).unwrap();
        assert!(p.fst().is_valid() && p.snd().is_valid());
        let w = Assembly::terminal();
        let f = RealizedMorphism::point(&x, Obj(0));
        let g = RealizedMorphism::point(&y, Obj(1));
        let h = p.pair(&f, &g).unwrap();
        assert!(h.is_valid());
        assert!(h.src.same(&w));
        assert_eq!(p.fst().after(&h).unwrap(), f);
        assert_eq!(p.snd().after(&h).unwrap(), g);
    }

    #[test]
    fn least_realizer_is_found() {
        let caps = Caps::default();
        let x = z2_asm();
        let found = find_realizer(&x, &x, &GFunctor::identity(&x.base), &caps)
            .unwrap()
            .unwrap();
        assert!(found.is_valid());
    }
}
