//! Functors and natural isomorphisms between finite groupoids.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{mismatch, Error, Result};
use crate::groupoid::{same_groupoid, Grpd, Mor, Obj};

/// A functor stored as object and morphism tables.
#[derive(Clone)]
pub struct GFunctor {
    dom: Grpd,
    cod: Grpd,
    omap: Vec<Obj>,
    mmap: Vec<Mor>,
}

impl fmt::Debug for GFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objs: Vec<String> = self
            .dom
            .objects()
            .map(|o| format!("{}↦{}", self.dom.object_id(o), self.cod.object_id(self.ob(o))))
            .collect();
        write!(f, "GFunctor[{}]", objs.join(", "))
    }
}

impl PartialEq for GFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.omap == other.omap
            && self.mmap == other.mmap
            && same_groupoid(&self.dom, &other.dom)
            && same_groupoid(&self.cod, &other.cod)
    }
}

impl Eq for GFunctor {}

impl Hash for GFunctor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dom.fingerprint().hash(state);
        self.cod.fingerprint().hash(state);
        self.mmap.hash(state);
    }
}

/// Functoriality failures found by [`GFunctor::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Endpoints { morphism: String },
    Identity { object: String },
    Composition { g: String, f: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Endpoints { morphism } => {
                write!(f, "image of {morphism} has wrong endpoints")
            }
            FunctorViolation::Identity { object } => {
                write!(f, "identity at {object} not sent to an identity")
            }
            FunctorViolation::Composition { g, f: ff } => {
                write!(f, "composite {g}∘{ff} not preserved")
            }
        }
    }
}

impl GFunctor {
    /// Wrap tables; checks only lengths and index ranges.
    pub fn new(dom: Grpd, cod: Grpd, omap: Vec<Obj>, mmap: Vec<Mor>) -> Result<GFunctor> {
        if omap.len() != dom.object_count() || mmap.len() != dom.morphism_count() {
            return Err(Error::Structural("functor table length mismatch".into()));
        }
        if omap.iter().any(|o| o.idx() >= cod.object_count())
            || mmap.iter().any(|m| m.idx() >= cod.morphism_count())
        {
            return Err(Error::Structural("functor table out of range".into()));
        }
        Ok(GFunctor {
            dom,
            cod,
            omap,
            mmap,
        })
    }

    pub fn from_fn(
        dom: &Grpd,
        cod: &Grpd,
        fo: impl Fn(Obj) -> Obj,
        fm: impl Fn(Mor) -> Mor,
    ) -> GFunctor {
        GFunctor {
            omap: dom.objects().map(fo).collect(),
            mmap: dom.morphisms().map(fm).collect(),
            dom: dom.clone(),
            cod: cod.clone(),
        }
    }

    pub fn identity(g: &Grpd) -> GFunctor {
        GFunctor::from_fn(g, g, |o| o, |m| m)
    }

    pub fn constant(dom: &Grpd, cod: &Grpd, o: Obj) -> GFunctor {
        let i = cod.id(o);
        GFunctor::from_fn(dom, cod, |_| o, |_| i)
    }

    #[inline]
    pub fn dom(&self) -> &Grpd {
        &self.dom
    }

    #[inline]
    pub fn cod(&self) -> &Grpd {
        &self.cod
    }

    #[inline]
    pub fn ob(&self, o: Obj) -> Obj {
        self.omap[o.idx()]
    }

    #[inline]
    pub fn mor(&self, m: Mor) -> Mor {
        self.mmap[m.idx()]
    }

    pub fn omap(&self) -> &[Obj] {
        &self.omap
    }

    pub fn mmap(&self) -> &[Mor] {
        &self.mmap
    }

    pub fn validate(&self) -> Vec<FunctorViolation> {
        let (d, c) = (&self.dom, &self.cod);
        let mut out = Vec::new();
        for m in d.morphisms() {
            let n = self.mor(m);
            if c.src(n) != self.ob(d.src(m)) || c.tgt(n) != self.ob(d.tgt(m)) {
                out.push(FunctorViolation::Endpoints {
                    morphism: d.morphism_id(m).to_string(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in d.objects() {
            if self.mor(d.id(o)) != c.id(self.ob(o)) {
                out.push(FunctorViolation::Identity {
                    object: d.object_id(o).to_string(),
                });
            }
        }
        for (g, f) in d.composable_pairs() {
            if self.mor(d.compose(g, f)) != c.compose(self.mor(g), self.mor(f)) {
                out.push(FunctorViolation::Composition {
                    g: d.morphism_id(g).to_string(),
                    f: d.morphism_id(f).to_string(),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &GFunctor) -> Result<GFunctor> {
        if !same_groupoid(f.cod(), self.dom()) {
            return mismatch("composing functors with unequal middle groupoid");
        }
        Ok(GFunctor {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            omap: f.omap.iter().map(|&o| self.ob(o)).collect(),
            mmap: f.mmap.iter().map(|&m| self.mor(m)).collect(),
        })
    }

    /// Same tables with the domain or codomain replaced by an equal groupoid.
    pub fn retyped(&self, dom: &Grpd, cod: &Grpd) -> Result<GFunctor> {
        if !same_groupoid(dom, &self.dom) || !same_groupoid(cod, &self.cod) {
            return mismatch("retyping a functor to a different groupoid");
        }
        Ok(GFunctor {
            dom: dom.clone(),
            cod: cod.clone(),
            omap: self.omap.clone(),
            mmap: self.mmap.clone(),
        })
    }

    pub fn is_faithful(&self) -> bool {
        let d = &self.dom;
        d.objects().all(|a| {
            d.objects().all(|b| {
                let hs = d.hom(a, b);
                let mut imgs: Vec<Mor> = hs.iter().map(|&m| self.mor(m)).collect();
                imgs.sort_unstable();
                imgs.dedup();
                imgs.len() == hs.len()
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let d = &self.dom;
        d.objects().all(|a| {
            d.objects().all(|b| {
                let target = self.cod.hom(self.ob(a), self.ob(b));
                target
                    .iter()
                    .all(|t| d.hom(a, b).iter().any(|&m| self.mor(m) == *t))
            })
        })
    }

    /// Morphisms sent to identities, as a set of vertical arrows.
    pub fn is_vertical(&self, m: Mor) -> bool {
        self.cod.is_identity(self.mor(m))
    }
}

/// A natural isomorphism `src ⇒ tgt` given by its components.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NatIso {
    src: GFunctor,
    tgt: GFunctor,
    comps: Vec<Mor>,
}

impl fmt::Debug for NatIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.src.cod();
        let parts: Vec<String> = self
            .src
            .dom()
            .objects()
            .map(|o| {
                format!(
                    "{}:{}",
                    self.src.dom().object_id(o),
                    c.morphism_id(self.at(o))
                )
            })
            .collect();
        write!(f, "NatIso[{}]", parts.join(", "))
    }
}

/// Failures found by [`NatIso::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NatIsoViolation {
    Component { object: String },
    Naturality { morphism: String },
}

impl fmt::Display for NatIsoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatIsoViolation::Component { object } => {
                write!(f, "component at {object} has wrong endpoints")
            }
            NatIsoViolation::Naturality { morphism } => {
                write!(f, "naturality square at {morphism} does not commute")
            }
        }
    }
}

impl NatIso {
    pub fn new(src: GFunctor, tgt: GFunctor, comps: Vec<Mor>) -> Result<NatIso> {
        if !same_groupoid(src.dom(), tgt.dom()) || !same_groupoid(src.cod(), tgt.cod()) {
            return mismatch("natural isomorphism between non-parallel functors");
        }
        if comps.len() != src.dom().object_count()
            || comps.iter().any(|m| m.idx() >= src.cod().morphism_count())
        {
            return Err(Error::Structural("component table mismatch".into()));
        }
        Ok(NatIso { src, tgt, comps })
    }

    pub fn from_fn(src: &GFunctor, tgt: &GFunctor, comp: impl Fn(Obj) -> Mor) -> Result<NatIso> {
        let comps = src.dom().objects().map(comp).collect();
        NatIso::new(src.clone(), tgt.clone(), comps)
    }

    pub fn identity(f: &GFunctor) -> NatIso {
        let c = f.cod();
        NatIso {
            comps: f.dom().objects().map(|o| c.id(f.ob(o))).collect(),
            src: f.clone(),
            tgt: f.clone(),
        }
    }

    pub fn src(&self) -> &GFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &GFunctor {
        &self.tgt
    }

    pub fn dom(&self) -> &Grpd {
        self.src.dom()
    }

    pub fn cod(&self) -> &Grpd {
        self.src.cod()
    }

    #[inline]
    pub fn at(&self, o: Obj) -> Mor {
        self.comps[o.idx()]
    }

    pub fn comps(&self) -> &[Mor] {
        &self.comps
    }

    pub fn validate(&self) -> Vec<NatIsoViolation> {
        let (d, c) = (self.dom(), self.cod());
        let mut out = Vec::new();
        for o in d.objects() {
            let a = self.at(o);
            if c.src(a) != self.src.ob(o) || c.tgt(a) != self.tgt.ob(o) {
                out.push(NatIsoViolation::Component {
                    object: d.object_id(o).to_string(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for m in d.morphisms() {
            let lhs = c.compose(self.tgt.mor(m), self.at(d.src(m)));
            let rhs = c.compose(self.at(d.tgt(m)), self.src.mor(m));
            if lhs != rhs {
                out.push(NatIsoViolation::Naturality {
                    morphism: d.morphism_id(m).to_string(),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `self ∘ alpha`, where `alpha: F ⇒ G` and `self: G ⇒ H`.
    pub fn after(&self, alpha: &NatIso) -> Result<NatIso> {
        if alpha.tgt != self.src {
            return mismatch("vertical composite of non-adjacent natural isomorphisms");
        }
        let c = self.cod();
        Ok(NatIso {
            src: alpha.src.clone(),
            tgt: self.tgt.clone(),
            comps: self
                .comps
                .iter()
                .zip(&alpha.comps)
                .map(|(&b, &a)| c.compose(b, a))
                .collect(),
        })
    }

    pub fn inverse(&self) -> NatIso {
        let c = self.cod();
        NatIso {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            comps: self.comps.iter().map(|&m| c.inv(m)).collect(),
        }
    }

    /// `self * k`: components at `k(x)`, between `F∘k` and `G∘k`.
    pub fn whisker_left(&self, k: &GFunctor) -> Result<NatIso> {
        Ok(NatIso {
            src: self.src.after(k)?,
            tgt: self.tgt.after(k)?,
            comps: k.omap().iter().map(|&o| self.at(o)).collect(),
        })
    }

    /// `l * self`: components `l(α_x)`, between `l∘F` and `l∘G`.
    pub fn whisker_right(&self, l: &GFunctor) -> Result<NatIso> {
        Ok(NatIso {
            src: l.after(&self.src)?,
            tgt: l.after(&self.tgt)?,
            comps: self.comps.iter().map(|&m| l.mor(m)).collect(),
        })
    }
}

/// An equivalence of groupoids with explicit unit and counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceData {
    pub fwd: GFunctor,
    pub bwd: GFunctor,
    /// `id ⇒ bwd ∘ fwd`
    pub unit: NatIso,
    /// `id ⇒ fwd ∘ bwd`
    pub counit: NatIso,
}

impl EquivalenceData {
    pub fn identity(g: &Grpd) -> EquivalenceData {
        let i = GFunctor::identity(g);
        EquivalenceData {
            fwd: i.clone(),
            bwd: i.clone(),
            unit: NatIso::identity(&i),
            counit: NatIso::identity(&i),
        }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !same_groupoid(self.fwd.cod(), self.bwd.dom())
            || !same_groupoid(self.fwd.dom(), self.bwd.cod())
        {
            out.push("fwd and bwd are not opposite".to_string());
            return out;
        }
        out.extend(self.fwd.validate().iter().map(|v| format!("fwd: {v}")));
        out.extend(self.bwd.validate().iter().map(|v| format!("bwd: {v}")));
        let ix = GFunctor::identity(self.fwd.dom());
        let iy = GFunctor::identity(self.fwd.cod());
        match self.bwd.after(&self.fwd) {
            Ok(gf) if self.unit.src == ix && self.unit.tgt == gf => {
                out.extend(self.unit.validate().iter().map(|v| format!("unit: {v}")))
            }
            _ => out.push("unit has wrong boundary".to_string()),
        }
        match self.fwd.after(&self.bwd) {
            Ok(fg) if self.counit.src == iy && self.counit.tgt == fg => {
                out.extend(self.counit.validate().iter().map(|v| format!("counit: {v}")))
            }
            _ => out.push("counit has wrong boundary".to_string()),
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn inverse(&self) -> EquivalenceData {
        EquivalenceData {
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
            unit: self.counit.clone(),
            counit: self.unit.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic, walking_iso};

    #[test]
    fn identity_functor_is_valid() {
        let g = cyclic(3, "o");
        assert!(GFunctor::identity(&g).is_valid());
    }

    #[test]
    fn broken_functor_is_caught() {
        let g = cyclic(3, "o");
        let z = cyclic(2, "p");
        let bad = GFunctor::from_fn(&g, &z, |_| Obj(0), |m| Mor((m.0 == 1) as u32));
        assert!(!bad.is_valid());
    }

    #[test]
    fn natiso_inverse_composes_to_identity() {
        let i = walking_iso();
        let f0 = GFunctor::constant(&i, &i, Obj(0));
        let f1 = GFunctor::constant(&i, &i, Obj(1));
        let m = i.hom(Obj(0), Obj(1))[0];
        let a = NatIso::from_fn(&f0, &f1, |_| m).unwrap();
        assert!(a.is_valid());
        assert_eq!(a.inverse().after(&a).unwrap(), NatIso::identity(&f0));
    }

    #[test]
    fn non_natural_components_are_caught() {
        let z = cyclic(3, "o");
        let id = GFunctor::identity(&z);
        let twist = NatIso::from_fn(&id, &id, |_| Mor(1)).unwrap();
        assert!(twist.is_valid());
        let i = walking_iso();
        let f = GFunctor::identity(&i);
        let swapped = NatIso::from_fn(&f, &f, |o| i.id(o)).unwrap();
        assert!(swapped.is_valid());
        let wrong = NatIso::new(f.clone(), f, vec![i.id(Obj(0)), i.id(Obj(0))]).unwrap();
        assert!(!wrong.is_valid());
    }
}
