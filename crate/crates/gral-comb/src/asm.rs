//! Discrete assemblies over a typed combinatory algebra, the change of
//! algebra along the unit augmentation and the passage to `R(A)`.

use std::collections::BTreeSet;

use gral_core::groupoid::{discrete, Obj};
use gral_core::GFunctor;
use gral_pgasm::{Asm, Assembly};

use crate::rcat::{Computable, RCat};
use crate::reduce::{bracket_abstract, normalize};
use crate::tca::Tca;
use crate::term::{app, var, Term, Ty};
use crate::{CombError, Result};

/// Elements `0..n`, element `i` realized by `realizers[i]` of type `rtype`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteAssembly {
    pub rtype: Ty,
    pub realizers: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteMorphism {
    pub fun: Vec<usize>,
    pub realizer: Term,
}

impl DiscreteAssembly {
    pub fn new(tca: &Tca, rtype: Ty, realizers: Vec<Term>) -> Result<Self> {
        let realizers = realizers
            .iter()
            .map(|r| {
                if !r.is_closed() {
                    return Err(CombError::Precondition(format!("realizer {r} is open")));
                }
                if tca.check(r)? != rtype {
                    return Err(CombError::Precondition(format!("realizer {r} is not of type {rtype}")));
                }
                tca.normalize(r)
            })
            .collect::<Result<_>>()?;
        Ok(DiscreteAssembly { rtype, realizers })
    }

    pub fn len(&self) -> usize {
        self.realizers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.realizers.is_empty()
    }

    /// Distinct elements have distinct realizers.
    pub fn is_modest(&self) -> bool {
        let set: BTreeSet<&Term> = self.realizers.iter().collect();
        set.len() == self.realizers.len()
    }

    /// The same assembly as a groupoidal assembly over discrete groupoids.
    pub fn to_groupoid_assembly(&self) -> Asm {
        let names: Vec<String> = (0..self.len()).map(|i| format!("x{i}")).collect();
        let mut reals: Vec<String> = self.realizers.iter().map(Term::to_string).collect();
        reals.sort();
        reals.dedup();
        let base = discrete(&names);
        let rtype = discrete(&reals);
        let at = |i: usize| Obj(reals.binary_search(&self.realizers[i].to_string()).unwrap() as u32);
        let rfun = GFunctor::from_fn(&base, &rtype, |o| at(o.idx()), |m| rtype.id(at(base.src(m).idx())));
        Assembly::of(&rfun)
    }
}

impl DiscreteMorphism {
    pub fn identity(x: &DiscreteAssembly) -> Result<Self> {
        Ok(DiscreteMorphism {
            fun: (0..x.len()).collect(),
            realizer: normalize(&bracket_abstract(&var("x", x.rtype.clone()), "x", &x.rtype)?)?,
        })
    }

    /// Failures of `realizer · ‖x‖ = ‖fun x‖`.
    pub fn validate(&self, tca: &Tca, src: &DiscreteAssembly, tgt: &DiscreteAssembly) -> Vec<String> {
        let mut out = Vec::new();
        let want = Ty::arrow(src.rtype.clone(), tgt.rtype.clone());
        match tca.check(&self.realizer) {
            Ok(t) if t == want => {}
            Ok(t) => out.push(format!("realizer has type {t}, expected {want}")),
            Err(e) => out.push(e.to_string()),
        }
        if !out.is_empty() {
            return out;
        }
        if self.fun.len() != src.len() || self.fun.iter().any(|&y| y >= tgt.len()) {
            return vec!["function table out of range".into()];
        }
        for (x, &y) in self.fun.iter().enumerate() {
            let got = normalize(&app(self.realizer.clone(), src.realizers[x].clone()));
            if got.as_ref() != Ok(&tgt.realizers[y]) {
                out.push(format!("element {x} is not tracked"));
            }
        }
        out
    }

    /// `g ∘ f`, realized by `[x] e_g (e_f x)`.
    pub fn then(&self, g: &DiscreteMorphism, src: &DiscreteAssembly) -> Result<DiscreteMorphism> {
        let x = var("x", src.rtype.clone());
        let body = app(g.realizer.clone(), app(self.realizer.clone(), x));
        Ok(DiscreteMorphism {
            fun: self.fun.iter().map(|&i| g.fun[i]).collect(),
            realizer: normalize(&bracket_abstract(&body, "x", &src.rtype)?)?,
        })
    }
}

/// An assembly realized at `1` and its copy realized at `A` by `a₀`.
#[derive(Clone, Debug)]
pub struct UnitRetype {
    pub src: DiscreteAssembly,
    pub tgt: DiscreteAssembly,
    pub fwd: DiscreteMorphism,
    pub bwd: DiscreteMorphism,
}

/// `X ≅ X'` with `‖x‖' = a₀`, `fwd` realized by `a₀` and `bwd` by `∗`.
pub fn unit_retype(tca: &Tca, x: &DiscreteAssembly, a: &Ty, a0: &Term) -> Result<UnitRetype> {
    if x.rtype != Ty::Unit {
        return Err(CombError::Precondition("assembly is not realized at 1".into()));
    }
    let tgt = DiscreteAssembly::new(tca, a.clone(), vec![a0.clone(); x.len()])?;
    let id: Vec<usize> = (0..x.len()).collect();
    Ok(UnitRetype {
        src: x.clone(),
        tgt,
        fwd: DiscreteMorphism {
            fun: id.clone(),
            realizer: tca.normalize(a0)?,
        },
        bwd: DiscreteMorphism {
            fun: id,
            realizer: Term::Star,
        },
    })
}

impl UnitRetype {
    /// Both maps are tracked and mutually inverse.
    pub fn verify(&self, tca: &Tca) -> Vec<String> {
        let mut out = self.fwd.validate(tca, &self.src, &self.tgt);
        out.extend(self.bwd.validate(tca, &self.tgt, &self.src));
        let round = |f: &DiscreteMorphism, g: &DiscreteMorphism| f.fun.iter().map(|&i| g.fun[i]).collect::<Vec<_>>();
        let id: Vec<usize> = (0..self.src.len()).collect();
        if round(&self.fwd, &self.bwd) != id || round(&self.bwd, &self.fwd) != id {
            out.push("maps are not mutually inverse".into());
        }
        out
    }
}

/// Normal forms between unit-free types never mention the unit, so the
/// inclusion of assemblies over `A` into assemblies over `A¹` is full.
pub fn unit_free(t: &Term) -> bool {
    let mut tys = BTreeSet::new();
    t.types(&mut tys);
    !tys.iter().any(Ty::mentions_unit)
}

/// A discrete assembly over `R(A)`: elements realized by points `1 → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RAssembly {
    pub rtype: Ty,
    pub points: Vec<Computable>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMorphism {
    pub fun: Vec<usize>,
    pub realizer: Computable,
}

impl RMorphism {
    /// `k ∘ ‖x‖ = ‖fun x‖` in `R(A)`.
    pub fn validate(&self, r: &RCat, src: &RAssembly, tgt: &RAssembly) -> Vec<String> {
        let mut out = Vec::new();
        for (x, &y) in self.fun.iter().enumerate() {
            match r.compose(&self.realizer, &src.points[x]) {
                Ok(c) if c == tgt.points[y] => {}
                Ok(_) => out.push(format!("element {x} is not tracked")),
                Err(e) => out.push(e.to_string()),
            }
        }
        out
    }
}

pub fn to_r(r: &RCat, x: &DiscreteAssembly) -> Result<RAssembly> {
    let points = x
        .realizers
        .iter()
        .map(|e| r.represent(&Ty::Unit, &x.rtype, e))
        .collect::<Result<_>>()?;
    Ok(RAssembly {
        rtype: x.rtype.clone(),
        points,
    })
}

pub fn from_r(p: &RAssembly) -> DiscreteAssembly {
    DiscreteAssembly {
        rtype: p.rtype.clone(),
        realizers: p.points.iter().map(|c| c.witness.clone()).collect(),
    }
}

/// `e ↦ e·(−)`.
pub fn morphism_to_r(r: &RCat, src: &DiscreteAssembly, tgt: &DiscreteAssembly, f: &DiscreteMorphism) -> Result<RMorphism> {
    Ok(RMorphism {
        fun: f.fun.clone(),
        realizer: r.represent(&src.rtype, &tgt.rtype, &f.realizer)?,
    })
}

/// `k ↦ e_k`.
pub fn morphism_from_r(k: &RMorphism) -> DiscreteMorphism {
    DiscreteMorphism {
        fun: k.fun.clone(),
        realizer: k.realizer.witness.clone(),
    }
}

/// Result of the two round trips between assemblies over `A` and over `R(A)`.
#[derive(Clone, Debug)]
pub struct BridgeReport {
    pub objects: bool,
    pub morphisms: bool,
    pub tracked: bool,
    pub detail: Vec<String>,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.objects && self.morphisms && self.tracked
    }
}

/// Round trips for `X`, `Y` and every map `X → Y` in `maps`.
pub fn bridge_round_trip(
    r: &RCat,
    x: &DiscreteAssembly,
    y: &DiscreteAssembly,
    maps: &[DiscreteMorphism],
) -> Result<BridgeReport> {
    let (rx, ry) = (to_r(r, x)?, to_r(r, y)?);
    let mut detail = Vec::new();
    let objects = from_r(&rx) == *x && from_r(&ry) == *y && to_r(r, &from_r(&rx))? == rx;
    if !objects {
        detail.push("object round trip differs".into());
    }
    let mut morphisms = true;
    let mut tracked = true;
    for f in maps {
        let v = f.validate(&r.tca, x, y);
        if !v.is_empty() {
            return Err(CombError::Precondition(format!("map is not tracked: {}", v[0])));
        }
        let k = morphism_to_r(r, x, y, f)?;
        let v = k.validate(r, &rx, &ry);
        if !v.is_empty() {
            tracked = false;
            detail.extend(v);
        }
        let back = morphism_from_r(&k);
        if back.fun != f.fun || back.realizer != normalize(&f.realizer)? {
            morphisms = false;
            detail.push("morphism round trip differs".into());
        }
        if morphism_to_r(r, x, y, &back)? != k {
            morphisms = false;
            detail.push("morphism round trip through R(A) differs".into());
        }
        if !back.validate(&r.tca, x, y).is_empty() {
            tracked = false;
            detail.push("returned realizer does not track".into());
        }
    }
    Ok(BridgeReport {
        objects,
        morphisms,
        tracked,
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> Ty {
        Ty::base("o")
    }

    fn c(n: &str) -> Term {
        Term::Const(n.into(), o())
    }

    #[test]
    fn unit_retype_is_an_isomorphism() {
        let t = Tca::standard().unit_augmentation();
        let x = DiscreteAssembly::new(&t, Ty::Unit, vec![Term::Star; 3]).unwrap();
        let u = unit_retype(&t, &x, &o(), &c("a")).unwrap();
        assert!(u.verify(&t).is_empty());
    }

    #[test]
    fn bridge_and_modesty() {
        let t = Tca::standard().unit_augmentation();
        let r = RCat::new(&t, &[o(), Ty::arrow(o(), o())], 3, 5000).unwrap();
        let x = DiscreteAssembly::new(&t, o(), vec![c("a"), c("b")]).unwrap();
        let y = DiscreteAssembly::new(&t, o(), vec![c("b"), c("a"), c("b")]).unwrap();
        let swap_free = DiscreteMorphism {
            fun: vec![0, 0],
            realizer: app(Term::K(o(), o()), c("b")),
        };
        let rep = bridge_round_trip(&r, &x, &y, &[swap_free]).unwrap();
        assert!(rep.holds(), "{:?}", rep.detail);
        assert!(x.is_modest() && !y.is_modest());
        assert!(x.to_groupoid_assembly().is_modest());
        assert!(!y.to_groupoid_assembly().is_modest());
    }
}
