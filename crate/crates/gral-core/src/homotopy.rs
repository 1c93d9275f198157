//! Homotopies `A × 𝕀₁ → B` and their compositions.

use crate::error::{Error, Result};
use crate::interval::IntervalData;
use crate::realizer::RealizerCategory;

/// A homotopy `lhs ⇒ rhs` between maps `base → target`.
#[derive(Clone, Debug)]
pub struct Homotopy<C: RealizerCategory> {
    pub base: C::Ob,
    pub lhs: C::Map,
    pub rhs: C::Map,
    pub body: C::Map,
}

impl<C: RealizerCategory> PartialEq for Homotopy<C> {
    fn eq(&self, other: &Self) -> bool {
        self.body == other.body && self.lhs == other.lhs && self.rhs == other.rhs
    }
}

impl<C: RealizerCategory> Eq for Homotopy<C> {}

/// `⟨A, p∘!⟩: A → A × 𝕀₁` for an endpoint `p: 𝕀₀ → 𝕀₁`.
pub fn section<C: RealizerCategory>(
    cat: &C,
    a: &C::Ob,
    p: &C::Map,
) -> Result<C::Map> {
    let idp = cat.identity(a);
    cat.pair(&idp, &cat.constant(a, p)?)
}

impl<C: RealizerCategory> Homotopy<C> {
    /// Wrap a body, computing `dom = H∘⟨A,0*⟩` and `cod = H∘⟨A,1*⟩`.
    pub fn new(cat: &C, iv: &IntervalData<C>, base: &C::Ob, body: C::Map) -> Result<Self> {
        let lhs = cat.compose(&body, &section(cat, base, &iv.zero)?)?;
        let rhs = cat.compose(&body, &section(cat, base, &iv.one)?)?;
        Ok(Homotopy {
            base: base.clone(),
            lhs,
            rhs,
            body,
        })
    }

    /// Check the stored boundary against the body.
    pub fn is_valid(&self, cat: &C, iv: &IntervalData<C>) -> bool {
        match Homotopy::new(cat, iv, &self.base, self.body.clone()) {
            Ok(h) => h.lhs == self.lhs && h.rhs == self.rhs,
            Err(_) => false,
        }
    }

    /// `fπ₁`.
    pub fn identity(cat: &C, iv: &IntervalData<C>, f: &C::Map) -> Result<Self> {
        let a = cat.dom(f);
        let body = cat.compose(f, &cat.fst(&a, &iv.obj[1])?)?;
        Homotopy::new(cat, iv, &a, body)
    }

    /// `H∘(A×σ)`.
    pub fn inverse(&self, cat: &C, iv: &IntervalData<C>) -> Result<Self> {
        let asig = cat.times(&cat.identity(&self.base), &iv.sigma)?;
        Homotopy::new(cat, iv, &self.base, cat.compose(&self.body, &asig)?)
    }

    pub fn target(&self, cat: &C) -> C::Ob {
        cat.cod(&self.body)
    }
}

/// `H'∘H ≔ μ[λ(H'∘swap), λ(H∘swap)]∘swap∘(A×2)`.
pub fn vcomp<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    h2: &Homotopy<C>,
    h1: &Homotopy<C>,
) -> Result<Homotopy<C>> {
    if h2.lhs != h1.rhs {
        return Err(Error::Mismatch("vertical composite: dom(H') ≠ cod(H)".into()));
    }
    let a = &h1.base;
    let b = h1.target(cat);
    let i1 = &iv.obj[1];
    let i2 = &iv.obj[2];
    let sw = cat.swap(i1, a)?;
    let l2 = cat.curry(&cat.compose(&h2.body, &sw)?, i1, a)?;
    let l1 = cat.curry(&cat.compose(&h1.body, &sw)?, i1, a)?;
    let cp = cat.copair2(iv, &l2, &l1)?;
    let mu = cat.uncurry(&cp, a, &b)?;
    let sw2 = cat.swap(a, i2)?;
    let a2 = cat.times(&cat.identity(a), &iv.two)?;
    let body = cat.compose_all(&[&mu, &sw2, &a2])?;
    Homotopy::new(cat, iv, a, body)
}

/// `H'∘(H×𝕀₁)∘assoc∘(A×Δ)` for `H: f ⇒ g` on `A → B` and `H': f' ⇒ g'`
/// on `B → C`.
pub fn hcomp<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    h2: &Homotopy<C>,
    h1: &Homotopy<C>,
) -> Result<Homotopy<C>> {
    let b = h1.target(cat);
    if !cat.ob_eq(&b, &h2.base) {
        return Err(Error::Mismatch("horizontal composite: objects misaligned".into()));
    }
    let a = &h1.base;
    let i1 = &iv.obj[1];
    let id1 = cat.identity(i1);
    let diag = cat.pair(&id1, &id1)?;
    let a_diag = cat.times(&cat.identity(a), &diag)?;
    let ii = cat.product(i1, i1)?;
    let assoc = rebracket(cat, a, i1, i1, &ii)?;
    let h_i = cat.times(&h1.body, &id1)?;
    let body = cat.compose_all(&[&h2.body, &h_i, &assoc, &a_diag])?;
    Homotopy::new(cat, iv, a, body)
}

/// `A × (X × Y) → (A × X) × Y`.
pub fn rebracket<C: RealizerCategory>(
    cat: &C,
    a: &C::Ob,
    x: &C::Ob,
    y: &C::Ob,
    xy: &C::Ob,
) -> Result<C::Map> {
    let p_a = cat.fst(a, xy)?;
    let p_xy = cat.snd(a, xy)?;
    let px = cat.compose(&cat.fst(x, y)?, &p_xy)?;
    let py = cat.compose(&cat.snd(x, y)?, &p_xy)?;
    cat.pair(&cat.pair(&p_a, &px)?, &py)
}

/// `k ∘ H`, a homotopy `kf ⇒ kg`.
pub fn whisker_post<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    k: &C::Map,
    h: &Homotopy<C>,
) -> Result<Homotopy<C>> {
    Homotopy::new(cat, iv, &h.base, cat.compose(k, &h.body)?)
}

/// `H ∘ (k × 𝕀₁)`, a homotopy `fk ⇒ gk`.
pub fn whisker_pre<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    h: &Homotopy<C>,
    k: &C::Map,
) -> Result<Homotopy<C>> {
    let ki = cat.times(k, &cat.identity(&iv.obj[1]))?;
    Homotopy::new(cat, iv, &cat.dom(k), cat.compose(&h.body, &ki)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{natiso_as_functor, natiso_from_functor, product};
    use crate::enumerate;
    use crate::groupoid::{cyclic, walking_iso, Grpd};
    use crate::interval::gpd_interval;
    use crate::realizer::Gpd;

    fn homotopies(a: &Grpd, b: &Grpd) -> Vec<Homotopy<Gpd>> {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let p = product(a, &walking_iso());
        enumerate::functors(&p.grpd, b, 10_000)
            .unwrap()
            .into_iter()
            .map(|f| Homotopy::new(&cat, &iv, a, f).unwrap())
            .collect()
    }

    #[test]
    fn vcomp_matches_natiso_composition() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let a = cyclic(2, "o");
        let b = walking_iso();
        let p = product(&a, &walking_iso());
        let hs = homotopies(&a, &b);
        for h1 in &hs {
            for h2 in hs.iter().filter(|h| h.lhs == h1.rhs) {
                let v = vcomp(&cat, &iv, h2, h1).unwrap();
                let n1 = natiso_from_functor(&h1.body, &p).unwrap();
                let n2 = natiso_from_functor(&h2.body, &p).unwrap();
                let expect = natiso_as_functor(&n2.after(&n1).unwrap());
                assert_eq!(v.body, expect);
                assert_eq!(v.lhs, h1.lhs);
                assert_eq!(v.rhs, h2.rhs);
            }
        }
    }

    #[test]
    fn identity_and_inverse_laws() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let a = walking_iso();
        let b = cyclic(3, "o");
        for h in homotopies(&a, &b) {
            let idl = Homotopy::identity(&cat, &iv, &h.rhs).unwrap();
            assert_eq!(vcomp(&cat, &iv, &idl, &h).unwrap(), h);
            let inv = h.inverse(&cat, &iv).unwrap();
            let back = vcomp(&cat, &iv, &inv, &h).unwrap();
            assert_eq!(back, Homotopy::identity(&cat, &iv, &h.lhs).unwrap());
        }
    }

    #[test]
    fn hcomp_of_identities() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let a = cyclic(2, "o");
        let b = cyclic(4, "p");
        let c = walking_iso();
        for f in enumerate::functors(&a, &b, 100).unwrap() {
            for g in enumerate::functors(&b, &c, 100).unwrap() {
                let hf = Homotopy::identity(&cat, &iv, &f).unwrap();
                let hg = Homotopy::identity(&cat, &iv, &g).unwrap();
                let gf = g.after(&f).unwrap();
                assert_eq!(
                    hcomp(&cat, &iv, &hg, &hf).unwrap(),
                    Homotopy::identity(&cat, &iv, &gf).unwrap()
                );
            }
        }
    }
}
