//! The fundamental groupoid `Π(A)` of an object of a realizer category.
//!
//! Objects are points `𝕀₀ → A`, morphisms are paths `𝕀₁ → A`, composition
//! is path composition through `𝕀₂`.

use std::collections::hash_map::Entry;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::functor::{GFunctor, NatIso};
use crate::groupoid::{walking_iso, FinGroupoid, Grpd, Mor, Morphism, Obj};
use crate::homotopy::Homotopy;
use crate::interval::{constant_path, path_compose, reverse_path, IntervalData};
use crate::realizer::{Gpd, RealizerCategory};

#[derive(Clone, Debug)]
pub struct Fundamental<C: RealizerCategory> {
    pub space: C::Ob,
    pub grpd: Grpd,
    points: Vec<C::Map>,
    paths: Vec<C::Map>,
    point_index: FxHashMap<C::Map, Obj>,
    path_index: FxHashMap<C::Map, Mor>,
}

fn unique_label(seen: &mut FxHashMap<String, usize>, label: String) -> String {
    match seen.entry(label.clone()) {
        Entry::Vacant(v) => {
            v.insert(1);
            label
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += 1;
            format!("{label}#{}", o.get())
        }
    }
}

/// Build `Π(A)`. Fails if a composite, identity or reverse path is not
/// among the enumerated paths.
pub fn fundamental<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    a: &C::Ob,
) -> Result<Fundamental<C>> {
    let points = cat.hom(&iv.obj[0], a)?;
    let paths = cat.hom(&iv.obj[1], a)?;
    let point_index: FxHashMap<C::Map, Obj> = points
        .iter()
        .enumerate()
        .map(|(k, p)| (p.clone(), Obj(k as u32)))
        .collect();
    let path_index: FxHashMap<C::Map, Mor> = paths
        .iter()
        .enumerate()
        .map(|(k, p)| (p.clone(), Mor(k as u32)))
        .collect();
    let find_point = |m: &C::Map| {
        point_index
            .get(m)
            .copied()
            .ok_or_else(|| Error::Structural("endpoint is not an enumerated point".into()))
    };
    let find_path = |m: &C::Map| {
        path_index
            .get(m)
            .copied()
            .ok_or_else(|| Error::Structural("path is not an enumerated path".into()))
    };

    let mut seen = FxHashMap::default();
    let objects: Vec<String> = points
        .iter()
        .map(|p| unique_label(&mut seen, cat.label(p)))
        .collect();
    let mut seen = FxHashMap::default();
    let mut morphisms = Vec::with_capacity(paths.len());
    for p in &paths {
        morphisms.push(Morphism {
            id: unique_label(&mut seen, cat.label(p)),
            src: find_point(&cat.compose(p, &iv.zero)?)?,
            tgt: find_point(&cat.compose(p, &iv.one)?)?,
        });
    }
    let identity = points
        .iter()
        .map(|p| find_path(&constant_path(cat, iv, p)?))
        .collect::<Result<Vec<_>>>()?;
    let inverse = paths
        .iter()
        .map(|p| find_path(&reverse_path(cat, iv, p)?))
        .collect::<Result<Vec<_>>>()?;
    let mut comp = FxHashMap::default();
    for (f, mf) in morphisms.iter().enumerate() {
        for (g, mg) in morphisms.iter().enumerate() {
            if mg.src == mf.tgt {
                let h = path_compose(cat, iv, &paths[g], &paths[f])?;
                comp.insert((Mor(g as u32), Mor(f as u32)), find_path(&h)?);
            }
        }
    }
    let grpd = Arc::new(FinGroupoid::from_fn(
        objects,
        morphisms,
        identity,
        inverse,
        |g, f| comp[&(g, f)],
    ));
    Ok(Fundamental {
        space: a.clone(),
        grpd,
        points,
        paths,
        point_index,
        path_index,
    })
}

impl<C: RealizerCategory> Fundamental<C> {
    pub fn point(&self, o: Obj) -> &C::Map {
        &self.points[o.idx()]
    }

    pub fn path(&self, m: Mor) -> &C::Map {
        &self.paths[m.idx()]
    }

    pub fn point_of(&self, p: &C::Map) -> Option<Obj> {
        self.point_index.get(p).copied()
    }

    pub fn path_of(&self, p: &C::Map) -> Option<Mor> {
        self.path_index.get(p).copied()
    }
}

/// `Π(f)`: post-composition with `f`.
pub fn pi_map<C: RealizerCategory>(
    cat: &C,
    src: &Fundamental<C>,
    tgt: &Fundamental<C>,
    f: &C::Map,
) -> Result<GFunctor> {
    let omap = src
        .points
        .iter()
        .map(|p| {
            tgt.point_of(&cat.compose(f, p)?)
                .ok_or_else(|| Error::Mismatch("Π(f): image point missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mmap = src
        .paths
        .iter()
        .map(|p| {
            tgt.path_of(&cat.compose(f, p)?)
                .ok_or_else(|| Error::Mismatch("Π(f): image path missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    GFunctor::new(src.grpd.clone(), tgt.grpd.clone(), omap, mmap)
}

/// `H⟨α, 𝕀₁⟩` for a path `α` in the base of `H`.
pub fn diagonal<C: RealizerCategory>(
    cat: &C,
    h: &Homotopy<C>,
    alpha: &C::Map,
    second: &C::Map,
) -> Result<C::Map> {
    cat.compose(&h.body, &cat.pair(alpha, second)?)
}

/// `Π(H): Π(f) ⇒ Π(g)` with components `H⟨a, 𝕀₁⟩`.
pub fn pi_homotopy<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    src: &Fundamental<C>,
    tgt: &Fundamental<C>,
    h: &Homotopy<C>,
) -> Result<NatIso> {
    let f = pi_map(cat, src, tgt, &h.lhs)?;
    let g = pi_map(cat, src, tgt, &h.rhs)?;
    let id1 = cat.identity(&iv.obj[1]);
    let comps = src
        .points
        .iter()
        .map(|p| {
            let along = cat.compose(p, &cat.to_terminal(&iv.obj[1]))?;
            tgt.path_of(&diagonal(cat, h, &along, &id1)?)
                .ok_or_else(|| Error::Mismatch("Π(H): component missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    NatIso::new(f, g, comps)
}

/// The two factorisations of `H⟨α, 𝕀₁⟩` through the boundary of the
/// square `H∘(α × 𝕀₁)`. Returns the diagonal and both composites.
pub fn boundary_lemma<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    h: &Homotopy<C>,
    alpha: &C::Map,
) -> Result<[C::Map; 3]> {
    let i1 = &iv.obj[1];
    let id1 = cat.identity(i1);
    let at = |p: &C::Map| -> Result<C::Map> {
        let q = cat.compose(alpha, p)?;
        cat.compose(&q, &iv.star)
    };
    let c0 = cat.compose(&iv.zero, &iv.star)?;
    let c1 = cat.compose(&iv.one, &iv.star)?;
    let diag = diagonal(cat, h, alpha, &id1)?;
    let via_lhs = path_compose(
        cat,
        iv,
        &diagonal(cat, h, &at(&iv.one)?, &id1)?,
        &diagonal(cat, h, alpha, &c0)?,
    )?;
    let via_rhs = path_compose(
        cat,
        iv,
        &diagonal(cat, h, alpha, &c1)?,
        &diagonal(cat, h, &at(&iv.zero)?, &id1)?,
    )?;
    Ok([diag, via_lhs, via_rhs])
}

/// The path `𝕀₁ → A` picking out a morphism of a finite groupoid.
pub fn morphism_path(a: &Grpd, m: Mor) -> GFunctor {
    let i = walking_iso();
    GFunctor::from_fn(
        &i,
        a,
        |o| if o.idx() == 0 { a.src(m) } else { a.tgt(m) },
        |n| match (i.src(n).idx(), i.tgt(n).idx()) {
            (0, 0) => a.id(a.src(m)),
            (1, 1) => a.id(a.tgt(m)),
            (0, 1) => m,
            _ => a.inv(m),
        },
    )
}

/// The isomorphism `A ≅ Π(A)` in finite groupoids, as `(A → Π(A), Π(A) → A)`.
pub fn gpd_pi_iso(pi: &Fundamental<Gpd>) -> Result<(GFunctor, GFunctor)> {
    let a = &pi.space;
    let i = walking_iso();
    let arrow = i.hom(Obj(0), Obj(1))[0];
    let pt = crate::groupoid::terminal();
    let omap = a
        .objects()
        .map(|o| {
            pi.point_of(&GFunctor::constant(&pt, a, o))
                .ok_or_else(|| Error::Mismatch("point missing from Π(A)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mmap = a
        .morphisms()
        .map(|m| {
            pi.path_of(&morphism_path(a, m))
                .ok_or_else(|| Error::Mismatch("path missing from Π(A)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let fwd = GFunctor::new(a.clone(), pi.grpd.clone(), omap, mmap)?;
    let bwd = GFunctor::from_fn(
        &pi.grpd,
        a,
        |o| pi.point(o).ob(Obj(0)),
        |m| pi.path(m).mor(arrow),
    );
    Ok((fwd, bwd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::product;
    use crate::enumerate;
    use crate::groupoid::{codiscrete, cyclic, disjoint_union};
    use crate::interval::gpd_interval;

    #[test]
    fn pi_of_groupoid_is_isomorphic() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let ids: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        for a in [
            cyclic(3, "o"),
            codiscrete(&ids),
            disjoint_union(&[walking_iso(), cyclic(2, "p")]),
        ] {
            let pi = fundamental(&cat, &iv, &a).unwrap();
            assert!(pi.grpd.validate().is_valid());
            let (fwd, bwd) = gpd_pi_iso(&pi).unwrap();
            assert!(fwd.is_valid() && bwd.is_valid());
            assert_eq!(bwd.after(&fwd).unwrap(), GFunctor::identity(&a));
            assert_eq!(fwd.after(&bwd).unwrap(), GFunctor::identity(&pi.grpd));
        }
    }

    #[test]
    fn pi_homotopy_is_natural_and_boundary_lemma_holds() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let a = cyclic(2, "o");
        let b = walking_iso();
        let pa = fundamental(&cat, &iv, &a).unwrap();
        let pb = fundamental(&cat, &iv, &b).unwrap();
        let ai = product(&a, &walking_iso());
        for body in enumerate::functors(&ai.grpd, &b, 1000).unwrap() {
            let h = Homotopy::new(&cat, &iv, &a, body).unwrap();
            let n = pi_homotopy(&cat, &iv, &pa, &pb, &h).unwrap();
            assert!(n.is_valid());
            for m in pa.grpd.morphisms() {
                let [d, l, r] = boundary_lemma(&cat, &iv, &h, pa.path(m)).unwrap();
                assert_eq!(d, l);
                assert_eq!(d, r);
            }
        }
    }
}
