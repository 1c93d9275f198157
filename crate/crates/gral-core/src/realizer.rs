//! Cartesian closed realizer categories with enumerable homs, and the
//! finite-groupoid instance.

use std::fmt::Debug;
use std::hash::Hash;

use crate::construct::{self, Caps};
use crate::enumerate;
use crate::error::{mismatch, Error, Result};
use crate::functor::GFunctor;
use crate::groupoid::{chain2, chain3, same_groupoid, terminal, walking_iso, Grpd, Obj};
use crate::interval::IntervalData;
use crate::squares::Square;

/// The operations the interval and homotopy constructions need.
///
/// `curry` and `eval` follow the convention that `b^a` is the exponential
/// with evaluation `b^a × a → b`.
pub trait RealizerCategory: Sized + Clone + Debug {
    type Ob: Clone + Debug;
    type Map: Clone + Debug + PartialEq + Eq + Hash;

    fn dom(&self, f: &Self::Map) -> Self::Ob;
    fn cod(&self, f: &Self::Map) -> Self::Ob;
    fn ob_eq(&self, a: &Self::Ob, b: &Self::Ob) -> bool;
    fn identity(&self, a: &Self::Ob) -> Self::Map;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Result<Self::Map>;

    fn terminal(&self) -> Self::Ob;
    fn to_terminal(&self, a: &Self::Ob) -> Self::Map;
    fn product(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Self::Ob>;
    fn fst(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Self::Map>;
    fn snd(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Self::Map>;
    fn pair(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map>;
    fn exponential(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Self::Ob>;
    fn eval(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Self::Map>;
    /// `λ(f): z → b^a` for `f: z × a → b`.
    fn curry(&self, f: &Self::Map, z: &Self::Ob, a: &Self::Ob) -> Result<Self::Map>;

    /// Every map `a → b`, in a fixed order.
    fn hom(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Vec<Self::Map>>;
    /// Objects quantified over when checking pushout universality.
    fn probes(&self) -> Vec<Self::Ob>;

    /// `[β, α]: 𝕀₂ → A` with `α` on `i₀` and `β` on `i₁`.
    fn copair2(
        &self,
        iv: &IntervalData<Self>,
        beta: &Self::Map,
        alpha: &Self::Map,
    ) -> Result<Self::Map>;
    /// `[c, d]: 𝕀₃ → A` with `c` on `j₁` and `d` on `j₀`.
    fn copair3(&self, iv: &IntervalData<Self>, c: &Self::Map, d: &Self::Map)
        -> Result<Self::Map>;

    /// Filler of a commutative square of homotopies, when available.
    fn boundary_inverse(
        &self,
        _iv: &IntervalData<Self>,
        _sq: &Square<Self>,
    ) -> Result<Self::Map> {
        Err(Error::Capability("boundary inverse".into()))
    }

    fn has_boundary_inverse(&self) -> bool {
        false
    }

    fn label(&self, f: &Self::Map) -> String;

    fn compose_all(&self, maps: &[&Self::Map]) -> Result<Self::Map> {
        let (first, rest) = maps.split_first().expect("non-empty composite");
        rest.iter()
            .try_fold((*first).clone(), |acc, g| self.compose(&acc, g))
    }

    /// `f × g`.
    fn times(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map> {
        let (a, b) = (self.dom(f), self.dom(g));
        let l = self.compose(f, &self.fst(&a, &b)?)?;
        let r = self.compose(g, &self.snd(&a, &b)?)?;
        self.pair(&l, &r)
    }

    /// `swap: a × b → b × a`.
    fn swap(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Self::Map> {
        self.pair(&self.snd(a, b)?, &self.fst(a, b)?)
    }

    /// `μ(g) = eval ∘ (g × a)` for `g: z → b^a`.
    fn uncurry(&self, g: &Self::Map, a: &Self::Ob, b: &Self::Ob) -> Result<Self::Map> {
        let ga = self.times(g, &self.identity(a))?;
        self.compose(&self.eval(a, b)?, &ga)
    }

    /// Constant map `a → b` at a point `p: 1 → b`.
    fn constant(&self, a: &Self::Ob, p: &Self::Map) -> Result<Self::Map> {
        self.compose(p, &self.to_terminal(a))
    }
}

/// Finite groupoids as a realizer category.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gpd {
    pub caps: Caps,
}

impl Gpd {
    pub fn new(caps: Caps) -> Gpd {
        Gpd { caps }
    }
}

/// Standard copair on the codiscrete chain: the image of `a → c` is the
/// composite of the edge images between them.
fn chain_copair(chain: &Grpd, edges: &[&GFunctor]) -> Result<GFunctor> {
    let i = walking_iso();
    let arrow = i.hom(Obj(0), Obj(1))[0];
    let cod = edges[0].cod().clone();
    for w in edges.windows(2) {
        if w[1].ob(Obj(0)) != w[0].ob(Obj(1)) {
            return Err(Error::Precondition("copair legs do not meet".into()));
        }
    }
    let point = |k: usize| {
        if k == 0 {
            edges[0].ob(Obj(0))
        } else {
            edges[k - 1].ob(Obj(1))
        }
    };
    let forward = |a: usize, c: usize| -> crate::groupoid::Mor {
        let mut m = cod.id(point(a));
        for e in &edges[a..c] {
            m = cod.compose(e.mor(arrow), m);
        }
        m
    };
    Ok(GFunctor::from_fn(
        chain,
        &cod,
        |o| point(o.idx()),
        |m| {
            let (a, c) = (chain.src(m).idx(), chain.tgt(m).idx());
            if a <= c {
                forward(a, c)
            } else {
                cod.inv(forward(c, a))
            }
        },
    ))
}

fn is_standard(iv: &IntervalData<Gpd>) -> bool {
    same_groupoid(&iv.obj[1], &walking_iso())
        && same_groupoid(&iv.obj[2], &chain2())
        && same_groupoid(&iv.obj[3], &chain3())
        && iv.in0.ob(Obj(0)) == Obj(0)
        && iv.in0.ob(Obj(1)) == Obj(1)
        && iv.in1.ob(Obj(0)) == Obj(1)
        && iv.in1.ob(Obj(1)) == Obj(2)
        && iv.j0.omap() == [Obj(0), Obj(1), Obj(2)]
        && iv.j1.omap() == [Obj(1), Obj(2), Obj(3)]
}

impl RealizerCategory for Gpd {
    type Ob = Grpd;
    type Map = GFunctor;

    fn dom(&self, f: &GFunctor) -> Grpd {
        f.dom().clone()
    }

    fn cod(&self, f: &GFunctor) -> Grpd {
        f.cod().clone()
    }

    fn ob_eq(&self, a: &Grpd, b: &Grpd) -> bool {
        same_groupoid(a, b)
    }

    fn identity(&self, a: &Grpd) -> GFunctor {
        GFunctor::identity(a)
    }

    fn compose(&self, g: &GFunctor, f: &GFunctor) -> Result<GFunctor> {
        g.after(f)
    }

    fn terminal(&self) -> Grpd {
        terminal()
    }

    fn to_terminal(&self, a: &Grpd) -> GFunctor {
        GFunctor::constant(a, &terminal(), Obj(0))
    }

    fn product(&self, a: &Grpd, b: &Grpd) -> Result<Grpd> {
        Ok(construct::product_capped(a, b, &self.caps)?.grpd)
    }

    fn fst(&self, a: &Grpd, b: &Grpd) -> Result<GFunctor> {
        Ok(construct::product_capped(a, b, &self.caps)?.fst())
    }

    fn snd(&self, a: &Grpd, b: &Grpd) -> Result<GFunctor> {
        Ok(construct::product_capped(a, b, &self.caps)?.snd())
    }

    fn pair(&self, f: &GFunctor, g: &GFunctor) -> Result<GFunctor> {
        construct::product_capped(f.cod(), g.cod(), &self.caps)?.pair(f, g)
    }

    fn exponential(&self, a: &Grpd, b: &Grpd) -> Result<Grpd> {
        Ok(construct::exponential(a, b, &self.caps)?.grpd.clone())
    }

    fn eval(&self, a: &Grpd, b: &Grpd) -> Result<GFunctor> {
        Ok(construct::exponential(a, b, &self.caps)?.eval().1)
    }

    fn curry(&self, f: &GFunctor, z: &Grpd, a: &Grpd) -> Result<GFunctor> {
        let za = construct::product_capped(z, a, &self.caps)?;
        if !same_groupoid(f.dom(), &za.grpd) {
            return mismatch("curry: domain is not the stated product");
        }
        construct::exponential(a, f.cod(), &self.caps)?.curry(&za, f)
    }

    fn hom(&self, a: &Grpd, b: &Grpd) -> Result<Vec<GFunctor>> {
        enumerate::functors(a, b, self.caps.max_morphisms)
    }

    fn probes(&self) -> Vec<Grpd> {
        let ids = vec!["a".to_string(), "b".to_string()];
        vec![
            terminal(),
            walking_iso(),
            chain2(),
            chain3(),
            crate::groupoid::cyclic(2, "z"),
            crate::groupoid::discrete(&ids),
            crate::groupoid::disjoint_union(&[walking_iso(), crate::groupoid::cyclic(3, "w")]),
        ]
    }

    fn copair2(&self, iv: &IntervalData<Gpd>, beta: &GFunctor, alpha: &GFunctor) -> Result<GFunctor> {
        if self.compose(beta, &iv.zero)? != self.compose(alpha, &iv.one)? {
            return Err(Error::Precondition("copair: β∘0 ≠ α∘1".into()));
        }
        if is_standard(iv) {
            return chain_copair(&iv.obj[2], &[alpha, beta]);
        }
        let hits: Vec<GFunctor> = self
            .hom(&iv.obj[2], alpha.cod())?
            .into_iter()
            .filter(|h| h.after(&iv.in0).as_ref() == Ok(alpha) && h.after(&iv.in1).as_ref() == Ok(beta))
            .collect();
        hits.into_iter()
            .next()
            .ok_or_else(|| Error::Precondition("copair does not exist".into()))
    }

    fn copair3(&self, iv: &IntervalData<Gpd>, c: &GFunctor, d: &GFunctor) -> Result<GFunctor> {
        if self.compose(c, &iv.in0)? != self.compose(d, &iv.in1)? {
            return Err(Error::Precondition("copair: c∘i₀ ≠ d∘i₁".into()));
        }
        if is_standard(iv) {
            let e0 = d.after(&iv.in0)?;
            let e1 = d.after(&iv.in1)?;
            let e2 = c.after(&iv.in1)?;
            return chain_copair(&iv.obj[3], &[&e0, &e1, &e2]);
        }
        let hits: Vec<GFunctor> = self
            .hom(&iv.obj[3], c.cod())?
            .into_iter()
            .filter(|h| h.after(&iv.j1).as_ref() == Ok(c) && h.after(&iv.j0).as_ref() == Ok(d))
            .collect();
        hits.into_iter()
            .next()
            .ok_or_else(|| Error::Precondition("copair does not exist".into()))
    }

    fn boundary_inverse(&self, iv: &IntervalData<Gpd>, sq: &Square<Gpd>) -> Result<GFunctor> {
        crate::squares::gpd_fill(self, iv, sq)
    }

    fn has_boundary_inverse(&self) -> bool {
        true
    }

    fn label(&self, f: &GFunctor) -> String {
        let d = f.dom();
        let c = f.cod();
        if d.object_count() == 1 && d.morphism_count() == 1 {
            return c.object_id(f.ob(Obj(0))).to_string();
        }
        if same_groupoid(d, &walking_iso()) {
            return c.morphism_id(f.mor(d.hom(Obj(0), Obj(1))[0])).to_string();
        }
        let parts: Vec<String> = d
            .morphisms()
            .map(|m| format!("{}↦{}", d.morphism_id(m), c.morphism_id(f.mor(m))))
            .collect();
        format!("[{}]", parts.join(","))
    }
}
