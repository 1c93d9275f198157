//! Exhaustive enumeration of functors and natural isomorphisms.
//!
//! A functor out of a connected groupoid is fixed by the image of a root
//! object, a group homomorphism out of the root's automorphism group and
//! the images of a spanning star of morphisms out of the root. Natural
//! isomorphisms are fixed by their root components.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::functor::{GFunctor, NatIso};
use crate::groupoid::{FinGroupoid, Grpd, Mor, Obj};

/// Spanning data for one connected component.
#[derive(Clone, Debug)]
pub struct Component {
    pub root: Obj,
    pub objects: Vec<Obj>,
    /// `star[o]`: chosen morphism `root → o` (identity at the root).
    pub star: FxHashMap<Obj, Mor>,
    /// Generators of the automorphism group of the root.
    pub generators: Vec<Mor>,
}

/// Connected components with spanning stars, in object order.
pub fn components(g: &FinGroupoid) -> Vec<Component> {
    g.components()
        .into_iter()
        .map(|objects| {
            let root = objects[0];
            let star = objects
                .iter()
                .map(|&o| {
                    let m = if o == root { g.id(root) } else { g.hom(root, o)[0] };
                    (o, m)
                })
                .collect();
            let generators = group_generators(g, g.hom(root, root));
            Component {
                root,
                objects,
                star,
                generators,
            }
        })
        .collect()
}

/// Greedy generating set: each element not yet generated is added.
pub fn group_generators(g: &FinGroupoid, elements: &[Mor]) -> Vec<Mor> {
    let mut gens = Vec::new();
    let mut generated: Vec<Mor> = Vec::new();
    if let Some(&e) = elements.first() {
        generated.push(g.id(g.src(e)));
    }
    for &x in elements {
        if generated.contains(&x) {
            continue;
        }
        gens.push(x);
        generated = closure(g, &gens, generated[0]);
    }
    gens
}

fn closure(g: &FinGroupoid, gens: &[Mor], unit: Mor) -> Vec<Mor> {
    let mut seen = vec![unit];
    let mut k = 0;
    while k < seen.len() {
        let x = seen[k];
        for &s in gens {
            let y = g.compose(s, x);
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
        k += 1;
    }
    seen
}

/// Extend an assignment on generators to a homomorphism of automorphism
/// groups, or `None` if the assignment is inconsistent.
fn extend_hom(
    dom: &FinGroupoid,
    cod: &FinGroupoid,
    root: Obj,
    target: Obj,
    gens: &[Mor],
    images: &[Mor],
) -> Option<FxHashMap<Mor, Mor>> {
    let mut phi = FxHashMap::default();
    phi.insert(dom.id(root), cod.id(target));
    let mut queue = vec![dom.id(root)];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        let fx = phi[&x];
        for (&s, &fs) in gens.iter().zip(images) {
            let y = dom.compose(s, x);
            let fy = cod.compose(fs, fx);
            match phi.get(&y) {
                Some(&old) if old != fy => return None,
                Some(_) => {}
                None => {
                    phi.insert(y, fy);
                    queue.push(y);
                }
            }
        }
        k += 1;
    }
    Some(phi)
}

type ObjOk<'a> = &'a dyn Fn(Obj, Obj) -> bool;
type MorOk<'a> = &'a dyn Fn(Mor, Mor) -> bool;

/// Restrictions on functor images, checked at every choice point and on
/// the finished functor.
#[derive(Default, Clone, Copy)]
pub struct FunctorFilter<'a> {
    pub obj: Option<ObjOk<'a>>,
    pub mor: Option<MorOk<'a>>,
}

impl FunctorFilter<'_> {
    fn obj_ok(&self, o: Obj, t: Obj) -> bool {
        self.obj.is_none_or(|f| f(o, t))
    }

    fn mor_ok(&self, m: Mor, t: Mor) -> bool {
        self.mor.is_none_or(|f| f(m, t))
    }
}

/// Partial functor on one component: `(object, image)` and
/// `(morphism, image)` pairs.
type Partial = (Vec<(Obj, Obj)>, Vec<(Mor, Mor)>);

fn component_functors(
    dom: &FinGroupoid,
    cod: &FinGroupoid,
    comp: &Component,
    filter: &FunctorFilter<'_>,
    cap: usize,
) -> Result<Vec<Partial>> {
    let mut out = Vec::new();
    let members: Vec<Mor> = comp
        .objects
        .iter()
        .flat_map(|&a| comp.objects.iter().flat_map(move |&b| dom.hom(a, b).iter().copied()))
        .collect();
    let others: Vec<Obj> = comp.objects[1..].to_vec();
    for target in cod.objects() {
        if !filter.obj_ok(comp.root, target) {
            continue;
        }
        let auts = cod.hom(target, target);
        let choices: Vec<Vec<Mor>> = comp
            .generators
            .iter()
            .map(|&s| auts.iter().copied().filter(|&t| filter.mor_ok(s, t)).collect())
            .collect();
        for images in product_iter(&choices) {
            let Some(phi) = extend_hom(dom, cod, comp.root, target, &comp.generators, &images)
            else {
                continue;
            };
            let star_choices: Vec<Vec<Mor>> = others
                .iter()
                .map(|&o| {
                    cod.outgoing(target)
                        .iter()
                        .copied()
                        .filter(|&t| filter.obj_ok(o, cod.tgt(t)) && filter.mor_ok(comp.star[&o], t))
                        .collect()
                })
                .collect();
            for stars in product_iter(&star_choices) {
                let mut star_img: FxHashMap<Obj, Mor> = FxHashMap::default();
                star_img.insert(comp.root, cod.id(target));
                for (&o, &t) in others.iter().zip(&stars) {
                    star_img.insert(o, t);
                }
                let mut mors = Vec::with_capacity(members.len());
                let mut ok = true;
                for &p in &members {
                    let (a, b) = (dom.src(p), dom.tgt(p));
                    let loop_ = dom.compose_path(&[comp.star[&a], p, dom.inv(comp.star[&b])]);
                    let img = cod.compose_path(&[
                        cod.inv(star_img[&a]),
                        phi[&loop_],
                        star_img[&b],
                    ]);
                    if !filter.mor_ok(p, img) {
                        ok = false;
                        break;
                    }
                    mors.push((p, img));
                }
                if !ok {
                    continue;
                }
                let objs = comp
                    .objects
                    .iter()
                    .map(|&o| (o, cod.tgt(star_img[&o])))
                    .collect();
                out.push((objs, mors));
                if out.len() > cap {
                    return Err(Error::SizeCap {
                        what: "functor enumeration".into(),
                        count: out.len(),
                        cap,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Cartesian product of choice lists, in lexicographic order.
pub fn product_iter<T: Copy>(choices: &[Vec<T>]) -> impl Iterator<Item = Vec<T>> + '_ {
    let empty = choices.iter().any(|c| c.is_empty());
    let mut idx = vec![0usize; choices.len()];
    let mut done = empty;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let item: Vec<T> = idx.iter().zip(choices).map(|(&k, c)| c[k]).collect();
        done = true;
        for pos in (0..idx.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        Some(item)
    })
}

/// All functors `dom → cod` satisfying the filter, at most `cap` of them.
pub fn functors_filtered(
    dom: &Grpd,
    cod: &Grpd,
    filter: FunctorFilter<'_>,
    cap: usize,
) -> Result<Vec<GFunctor>> {
    let comps = components(dom);
    let per: Vec<Vec<Partial>> = comps
        .iter()
        .map(|c| component_functors(dom, cod, c, &filter, cap))
        .collect::<Result<_>>()?;
    let total = per
        .iter()
        .try_fold(1usize, |acc, p| acc.checked_mul(p.len()))
        .unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::SizeCap {
            what: "functor enumeration".into(),
            count: total,
            cap,
        });
    }
    let index_lists: Vec<Vec<usize>> = per.iter().map(|p| (0..p.len()).collect()).collect();
    let mut out = Vec::with_capacity(total);
    for pick in product_iter(&index_lists) {
        let mut omap = vec![Obj(0); dom.object_count()];
        let mut mmap = vec![Mor(0); dom.morphism_count()];
        for (c, &k) in pick.iter().enumerate() {
            let (objs, mors) = &per[c][k];
            for &(o, t) in objs {
                omap[o.idx()] = t;
            }
            for &(m, t) in mors {
                mmap[m.idx()] = t;
            }
        }
        out.push(GFunctor::new(dom.clone(), cod.clone(), omap, mmap)?);
    }
    Ok(out)
}

pub fn functors(dom: &Grpd, cod: &Grpd, cap: usize) -> Result<Vec<GFunctor>> {
    functors_filtered(dom, cod, FunctorFilter::default(), cap)
}

/// Functors `h` with `over ∘ h = base`, e.g. maps in a slice.
pub fn functors_over(
    base: &GFunctor,
    over: &GFunctor,
    cap: usize,
) -> Result<Vec<GFunctor>> {
    let obj = |o: Obj, t: Obj| over.ob(t) == base.ob(o);
    let mor = |m: Mor, t: Mor| over.mor(t) == base.mor(m);
    functors_filtered(
        base.dom(),
        over.dom(),
        FunctorFilter {
            obj: Some(&obj),
            mor: Some(&mor),
        },
        cap,
    )
}

/// All natural isomorphisms `f ⇒ g` whose components pass `comp_ok`.
pub fn natisos_filtered(
    f: &GFunctor,
    g: &GFunctor,
    comp_ok: &dyn Fn(Obj, Mor) -> bool,
    cap: usize,
) -> Result<Vec<NatIso>> {
    let dom = f.dom();
    let cod = f.cod();
    let comps = components(dom);
    let mut per: Vec<Vec<Vec<(Obj, Mor)>>> = Vec::new();
    for c in &comps {
        let mut opts = Vec::new();
        for &a in cod.hom(f.ob(c.root), g.ob(c.root)) {
            let natural = c
                .generators
                .iter()
                .all(|&s| cod.compose(g.mor(s), a) == cod.compose(a, f.mor(s)));
            if !natural {
                continue;
            }
            let assignment: Vec<(Obj, Mor)> = c
                .objects
                .iter()
                .map(|&o| {
                    let t = c.star[&o];
                    (o, cod.compose_path(&[cod.inv(f.mor(t)), a, g.mor(t)]))
                })
                .collect();
            if assignment.iter().all(|&(o, m)| comp_ok(o, m)) {
                opts.push(assignment);
            }
        }
        per.push(opts);
    }
    let total = per
        .iter()
        .try_fold(1usize, |acc, p| acc.checked_mul(p.len()))
        .unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::SizeCap {
            what: "natural isomorphism enumeration".into(),
            count: total,
            cap,
        });
    }
    let index_lists: Vec<Vec<usize>> = per.iter().map(|p| (0..p.len()).collect()).collect();
    let mut out = Vec::with_capacity(total);
    for pick in product_iter(&index_lists) {
        let mut comps_tab = vec![Mor(0); dom.object_count()];
        for (c, &k) in pick.iter().enumerate() {
            for &(o, m) in &per[c][k] {
                comps_tab[o.idx()] = m;
            }
        }
        out.push(NatIso::new(f.clone(), g.clone(), comps_tab)?);
    }
    Ok(out)
}

pub fn natisos(f: &GFunctor, g: &GFunctor, cap: usize) -> Result<Vec<NatIso>> {
    natisos_filtered(f, g, &|_, _| true, cap)
}

/// Natural isomorphisms whose components are sent to identities by `p`.
pub fn vertical_natisos(
    f: &GFunctor,
    g: &GFunctor,
    p: &GFunctor,
    cap: usize,
) -> Result<Vec<NatIso>> {
    natisos_filtered(f, g, &|_, m| p.is_vertical(m), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{codiscrete, cyclic, discrete, walking_iso};
    use std::collections::HashSet;

    fn brute_force_functors(dom: &Grpd, cod: &Grpd) -> usize {
        // every pair of object and morphism maps, filtered by validity
        let no = cod.object_count();
        let nm = cod.morphism_count();
        let mut count = 0;
        let total_o = no.pow(dom.object_count() as u32);
        let total_m = nm.pow(dom.morphism_count() as u32);
        for oi in 0..total_o {
            let mut omap = Vec::new();
            let mut x = oi;
            for _ in 0..dom.object_count() {
                omap.push(Obj((x % no) as u32));
                x /= no;
            }
            for mi in 0..total_m {
                let mut mmap = Vec::new();
                let mut y = mi;
                for _ in 0..dom.morphism_count() {
                    mmap.push(Mor((y % nm) as u32));
                    y /= nm;
                }
                let f = GFunctor::new(dom.clone(), cod.clone(), omap.clone(), mmap).unwrap();
                if f.is_valid() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn functor_counts_match_brute_force() {
        let ids: Vec<String> = vec!["a".into(), "b".into()];
        let cases = [
            (walking_iso(), walking_iso()),
            (cyclic(2, "o"), cyclic(2, "p")),
            (cyclic(2, "o"), cyclic(4, "p")),
            (discrete(&ids), walking_iso()),
            (walking_iso(), cyclic(3, "p")),
            (cyclic(3, "o"), codiscrete(&ids)),
        ];
        for (d, c) in cases {
            let fs = functors(&d, &c, 10_000).unwrap();
            assert!(fs.iter().all(|f| f.is_valid()));
            let distinct: HashSet<_> = fs.iter().cloned().collect();
            assert_eq!(distinct.len(), fs.len());
            assert_eq!(fs.len(), brute_force_functors(&d, &c));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ids: Vec<String> = (0..4).map(|k| k.to_string()).collect();
        let c = codiscrete(&ids);
        assert!(matches!(
            functors(&c, &c, 10),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn natiso_counts() {
        let z2 = cyclic(2, "o");
        let id = GFunctor::identity(&z2);
        assert_eq!(natisos(&id, &id, 100).unwrap().len(), 2);
        let i = walking_iso();
        let idi = GFunctor::identity(&i);
        assert_eq!(natisos(&idi, &idi, 100).unwrap().len(), 1);
        let z3 = cyclic(3, "o");
        let t = GFunctor::constant(&z2, &z3, Obj(0));
        // components at the single object must commute with the trivial image
        assert_eq!(natisos(&t, &t, 100).unwrap().len(), 3);
    }
}
