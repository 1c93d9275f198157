//! Products, exponentials, pullbacks, iso-commas, cleavages and
//! pseudoinverses in the category of finite groupoids.

use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::enumerate;
use crate::error::{mismatch, Error, Result};
use crate::functor::{EquivalenceData, GFunctor, NatIso};
use crate::groupoid::{same_groupoid, walking_iso, FinGroupoid, Grpd, Mor, Morphism, Obj};

/// Size limits for constructed groupoids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Caps {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_objects: 64,
            max_morphisms: 4096,
        }
    }
}

impl Caps {
    pub fn new(max_objects: usize, max_morphisms: usize) -> Result<Caps> {
        if max_objects == 0 || max_morphisms == 0 {
            return Err(Error::Precondition("caps must be positive".into()));
        }
        Ok(Caps {
            max_objects,
            max_morphisms,
        })
    }

    pub fn check(&self, what: &str, objects: usize, morphisms: usize) -> Result<()> {
        if objects > self.max_objects {
            return Err(Error::SizeCap {
                what: format!("{what} objects"),
                count: objects,
                cap: self.max_objects,
            });
        }
        if morphisms > self.max_morphisms {
            return Err(Error::SizeCap {
                what: format!("{what} morphisms"),
                count: morphisms,
                cap: self.max_morphisms,
            });
        }
        Ok(())
    }
}

/// Binary product with row-major indexing: `(a, b)` sits at
/// `a * |right| + b`, for objects and morphisms alike.
#[derive(Clone, Debug)]
pub struct Product {
    pub grpd: Grpd,
    pub left: Grpd,
    pub right: Grpd,
}

impl Product {
    #[inline]
    pub fn obj(&self, a: Obj, b: Obj) -> Obj {
        Obj(a.0 * self.right.object_count() as u32 + b.0)
    }

    #[inline]
    pub fn mor(&self, f: Mor, g: Mor) -> Mor {
        Mor(f.0 * self.right.morphism_count() as u32 + g.0)
    }

    #[inline]
    pub fn split_obj(&self, o: Obj) -> (Obj, Obj) {
        let n = self.right.object_count() as u32;
        (Obj(o.0 / n), Obj(o.0 % n))
    }

    #[inline]
    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        let n = self.right.morphism_count() as u32;
        (Mor(m.0 / n), Mor(m.0 % n))
    }

    pub fn fst(&self) -> GFunctor {
        GFunctor::from_fn(
            &self.grpd,
            &self.left,
            |o| self.split_obj(o).0,
            |m| self.split_mor(m).0,
        )
    }

    pub fn snd(&self) -> GFunctor {
        GFunctor::from_fn(
            &self.grpd,
            &self.right,
            |o| self.split_obj(o).1,
            |m| self.split_mor(m).1,
        )
    }

    /// `⟨f, g⟩: W → left × right`.
    pub fn pair(&self, f: &GFunctor, g: &GFunctor) -> Result<GFunctor> {
        if !same_groupoid(f.dom(), g.dom())
            || !same_groupoid(f.cod(), &self.left)
            || !same_groupoid(g.cod(), &self.right)
        {
            return mismatch("pairing functors with mismatched boundaries");
        }
        Ok(GFunctor::from_fn(
            f.dom(),
            &self.grpd,
            |o| self.obj(f.ob(o), g.ob(o)),
            |m| self.mor(f.mor(m), g.mor(m)),
        ))
    }

    /// `f × g: dom → self`, where `dom` is the product of the domains.
    pub fn times(&self, dom: &Product, f: &GFunctor, g: &GFunctor) -> Result<GFunctor> {
        if !same_groupoid(f.dom(), &dom.left) || !same_groupoid(g.dom(), &dom.right) {
            return mismatch("product of functors with mismatched domains");
        }
        let l = f.after(&dom.fst())?;
        let r = g.after(&dom.snd())?;
        self.pair(&l, &r)
    }

    /// Pair of natural isomorphisms, between the paired functors.
    pub fn pair_natiso(&self, a: &NatIso, b: &NatIso) -> Result<NatIso> {
        let src = self.pair(a.src(), b.src())?;
        let tgt = self.pair(a.tgt(), b.tgt())?;
        NatIso::from_fn(&src, &tgt, |o| self.mor(a.at(o), b.at(o)))
    }
}

type Cache<T> = Mutex<FxHashMap<(u64, u64), Vec<(Grpd, Grpd, T)>>>;

fn product_cache() -> &'static Cache<Grpd> {
    static C: OnceLock<Cache<Grpd>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(FxHashMap::default()))
}

fn lookup<T: Clone>(cache: &Cache<T>, a: &Grpd, b: &Grpd) -> Option<T> {
    let guard = cache.lock().expect("cache lock");
    guard
        .get(&(a.fingerprint(), b.fingerprint()))?
        .iter()
        .find(|(x, y, _)| same_groupoid(x, a) && same_groupoid(y, b))
        .map(|(_, _, t)| t.clone())
}

const CACHE_LIMIT: usize = 4096;

fn store<T>(cache: &Cache<T>, a: &Grpd, b: &Grpd, t: T) {
    let mut guard = cache.lock().expect("cache lock");
    if guard.len() >= CACHE_LIMIT {
        guard.clear();
    }
    guard
        .entry((a.fingerprint(), b.fingerprint()))
        .or_default()
        .push((a.clone(), b.clone(), t));
}

/// Cartesian product of groupoids; ids are `(a,b)`.
pub fn product(left: &Grpd, right: &Grpd) -> Product {
    let grpd = match lookup(product_cache(), left, right) {
        Some(g) => g,
        None => {
            let g = Arc::new(build_product(left, right));
            store(product_cache(), left, right, g.clone());
            g
        }
    };
    Product {
        grpd,
        left: left.clone(),
        right: right.clone(),
    }
}

/// Product with a size check.
pub fn product_capped(left: &Grpd, right: &Grpd, caps: &Caps) -> Result<Product> {
    caps.check(
        "product",
        left.object_count() * right.object_count(),
        left.morphism_count() * right.morphism_count(),
    )?;
    Ok(product(left, right))
}

fn build_product(l: &Grpd, r: &Grpd) -> FinGroupoid {
    let nro = r.object_count() as u32;
    let nrm = r.morphism_count() as u32;
    let mut objects = Vec::new();
    for a in l.objects() {
        for b in r.objects() {
            objects.push(format!("({},{})", l.object_id(a), r.object_id(b)));
        }
    }
    let mut morphisms = Vec::new();
    for f in l.morphisms() {
        for g in r.morphisms() {
            morphisms.push(Morphism {
                id: format!("({},{})", l.morphism_id(f), r.morphism_id(g)),
                src: Obj(l.src(f).0 * nro + r.src(g).0),
                tgt: Obj(l.tgt(f).0 * nro + r.tgt(g).0),
            });
        }
    }
    let split = |m: Mor| (Mor(m.0 / nrm), Mor(m.0 % nrm));
    let join = |f: Mor, g: Mor| Mor(f.0 * nrm + g.0);
    let identity = l
        .objects()
        .flat_map(|a| r.objects().map(move |b| join(l.id(a), r.id(b))))
        .collect();
    let inverse = (0..morphisms.len() as u32)
        .map(|k| {
            let (f, g) = split(Mor(k));
            join(l.inv(f), r.inv(g))
        })
        .collect();
    FinGroupoid::from_fn(objects, morphisms, identity, inverse, |g, f| {
        let (g1, g2) = split(g);
        let (f1, f2) = split(f);
        join(l.compose(g1, f1), r.compose(g2, f2))
    })
}

/// The canonical re-bracketing `(a×b)×c → a×(b×c)`.
pub fn assoc(ab_c: &Product, ab: &Product, a_bc: &Product, bc: &Product) -> GFunctor {
    GFunctor::from_fn(
        &ab_c.grpd,
        &a_bc.grpd,
        |o| {
            let (x, c) = ab_c.split_obj(o);
            let (a, b) = ab.split_obj(x);
            a_bc.obj(a, bc.obj(b, c))
        },
        |m| {
            let (x, c) = ab_c.split_mor(m);
            let (a, b) = ab.split_mor(x);
            a_bc.mor(a, bc.mor(b, c))
        },
    )
}

/// `swap: a×b → b×a`.
pub fn swap(ab: &Product, ba: &Product) -> GFunctor {
    GFunctor::from_fn(
        &ab.grpd,
        &ba.grpd,
        |o| {
            let (a, b) = ab.split_obj(o);
            ba.obj(b, a)
        },
        |m| {
            let (f, g) = ab.split_mor(m);
            ba.mor(g, f)
        },
    )
}

/// The groupoid of functors `base → target` and natural isomorphisms.
#[derive(Debug)]
pub struct Exponential {
    pub grpd: Grpd,
    pub base: Grpd,
    pub target: Grpd,
    functors: Vec<GFunctor>,
    natisos: Vec<NatIso>,
    functor_index: FxHashMap<Vec<Mor>, Obj>,
    natiso_index: FxHashMap<(Obj, Obj, Vec<Mor>), Mor>,
}

fn exp_cache() -> &'static Cache<Arc<Exponential>> {
    static C: OnceLock<Cache<Arc<Exponential>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(FxHashMap::default()))
}

/// `target^base`; functors are named `F0, F1, …` and natural
/// isomorphisms `N0, N1, …` in enumeration order.
pub fn exponential(base: &Grpd, target: &Grpd, caps: &Caps) -> Result<Arc<Exponential>> {
    if let Some(e) = lookup(exp_cache(), base, target) {
        if e.grpd.object_count() <= caps.max_objects
            && e.grpd.morphism_count() <= caps.max_morphisms
        {
            return Ok(e);
        }
    }
    let e = Arc::new(build_exponential(base, target, caps)?);
    store(exp_cache(), base, target, e.clone());
    Ok(e)
}

fn build_exponential(base: &Grpd, target: &Grpd, caps: &Caps) -> Result<Exponential> {
    let functors = enumerate::functors(base, target, caps.max_objects)
        .map_err(|e| relabel(e, "exponential objects"))?;
    let functor_index: FxHashMap<Vec<Mor>, Obj> = functors
        .iter()
        .enumerate()
        .map(|(k, f)| (f.mmap().to_vec(), Obj(k as u32)))
        .collect();
    let mut natisos = Vec::new();
    let mut natiso_ends = Vec::new();
    for (a, f) in functors.iter().enumerate() {
        for (b, g) in functors.iter().enumerate() {
            let remaining = caps.max_morphisms.saturating_sub(natisos.len());
            let ns = enumerate::natisos(f, g, remaining).map_err(|_| Error::SizeCap {
                what: "exponential morphisms".into(),
                count: caps.max_morphisms + 1,
                cap: caps.max_morphisms,
            })?;
            for n in ns {
                natisos.push(n);
                natiso_ends.push((Obj(a as u32), Obj(b as u32)));
            }
        }
    }
    caps.check("exponential", functors.len(), natisos.len())?;
    let natiso_index: FxHashMap<(Obj, Obj, Vec<Mor>), Mor> = natisos
        .iter()
        .zip(&natiso_ends)
        .enumerate()
        .map(|(k, (n, &(a, b)))| ((a, b, n.comps().to_vec()), Mor(k as u32)))
        .collect();
    let objects = (0..functors.len()).map(|k| format!("F{k}")).collect();
    let morphisms = natiso_ends
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| Morphism {
            id: format!("N{k}"),
            src: a,
            tgt: b,
        })
        .collect();
    let idx = |a: Obj, b: Obj, n: &NatIso| natiso_index[&(a, b, n.comps().to_vec())];
    let identity = functors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let o = Obj(k as u32);
            idx(o, o, &NatIso::identity(f))
        })
        .collect();
    let inverse = natisos
        .iter()
        .zip(&natiso_ends)
        .map(|(n, &(a, b))| idx(b, a, &n.inverse()))
        .collect();
    let grpd = FinGroupoid::from_fn(objects, morphisms, identity, inverse, |g, f| {
        let (a, _) = natiso_ends[f.idx()];
        let (_, c) = natiso_ends[g.idx()];
        let comp = natisos[g.idx()]
            .after(&natisos[f.idx()])
            .expect("adjacent natural isomorphisms");
        idx(a, c, &comp)
    });
    Ok(Exponential {
        grpd: Arc::new(grpd),
        base: base.clone(),
        target: target.clone(),
        functors,
        natisos,
        functor_index,
        natiso_index,
    })
}

fn relabel(e: Error, what: &str) -> Error {
    match e {
        Error::SizeCap { count, cap, .. } => Error::SizeCap {
            what: what.into(),
            count,
            cap,
        },
        other => other,
    }
}

impl Exponential {
    pub fn functor(&self, o: Obj) -> &GFunctor {
        &self.functors[o.idx()]
    }

    pub fn natiso(&self, m: Mor) -> &NatIso {
        &self.natisos[m.idx()]
    }

    pub fn functors(&self) -> &[GFunctor] {
        &self.functors
    }

    pub fn obj_of(&self, f: &GFunctor) -> Option<Obj> {
        if !same_groupoid(f.dom(), &self.base) || !same_groupoid(f.cod(), &self.target) {
            return None;
        }
        self.functor_index.get(f.mmap()).copied()
    }

    pub fn mor_of(&self, n: &NatIso) -> Option<Mor> {
        let a = self.obj_of(n.src())?;
        let b = self.obj_of(n.tgt())?;
        self.natiso_index.get(&(a, b, n.comps().to_vec())).copied()
    }

    /// `eval: target^base × base → target`.
    pub fn eval(&self) -> (Product, GFunctor) {
        let p = product(&self.grpd, &self.base);
        let t = &self.target;
        let f = GFunctor::from_fn(
            &p.grpd,
            t,
            |o| {
                let (e, x) = p.split_obj(o);
                self.functors[e.idx()].ob(x)
            },
            |m| {
                let (n, u) = p.split_mor(m);
                let nat = &self.natisos[n.idx()];
                t.compose(nat.at(self.base.tgt(u)), nat.src().mor(u))
            },
        );
        (p, f)
    }

    /// Transpose of `k: z × base → target` to `z → target^base`.
    pub fn curry(&self, zx: &Product, k: &GFunctor) -> Result<GFunctor> {
        if !same_groupoid(&zx.right, &self.base)
            || !same_groupoid(k.dom(), &zx.grpd)
            || !same_groupoid(k.cod(), &self.target)
        {
            return mismatch("transposing a functor with mismatched boundary");
        }
        let z = &zx.left;
        let b = &self.base;
        let slice = |o: Obj| {
            GFunctor::from_fn(
                b,
                &self.target,
                |x| k.ob(zx.obj(o, x)),
                |u| k.mor(zx.mor(z.id(o), u)),
            )
        };
        let mut omap = Vec::with_capacity(z.object_count());
        for o in z.objects() {
            let f = slice(o);
            omap.push(self.obj_of(&f).ok_or_else(|| {
                Error::Precondition("transpose slice is not a functor".into())
            })?);
        }
        let mut mmap = Vec::with_capacity(z.morphism_count());
        for r in z.morphisms() {
            let (a, c) = (omap[z.src(r).idx()], omap[z.tgt(r).idx()]);
            let n = NatIso::from_fn(&self.functors[a.idx()], &self.functors[c.idx()], |x| {
                k.mor(zx.mor(r, b.id(x)))
            })?;
            mmap.push(self.mor_of(&n).ok_or_else(|| {
                Error::Precondition("transpose component is not natural".into())
            })?);
        }
        GFunctor::new(z.clone(), self.grpd.clone(), omap, mmap)
    }

    /// Inverse of [`Exponential::curry`]: `eval ∘ (g × id)`.
    pub fn uncurry(&self, g: &GFunctor) -> Result<(Product, GFunctor)> {
        if !same_groupoid(g.cod(), &self.grpd) {
            return mismatch("uncurrying a functor not into the exponential");
        }
        let zx = product(g.dom(), &self.base);
        let (ex, ev) = self.eval();
        let gx = ex.times(&zx, g, &GFunctor::identity(&self.base))?;
        Ok((zx, ev.after(&gx)?))
    }
}

/// Strict pullback of `f: X → Z` and `g: Y → Z`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub grpd: Grpd,
    pub f: GFunctor,
    pub g: GFunctor,
    objs: Vec<(Obj, Obj)>,
    mors: Vec<(Mor, Mor)>,
    obj_index: FxHashMap<(Obj, Obj), Obj>,
    mor_index: FxHashMap<(Mor, Mor), Mor>,
}

pub fn pullback(f: &GFunctor, g: &GFunctor, caps: &Caps) -> Result<Pullback> {
    if !same_groupoid(f.cod(), g.cod()) {
        return mismatch("pullback of functors with different codomains");
    }
    let (x, y) = (f.dom(), g.dom());
    let mut objs = Vec::new();
    for a in x.objects() {
        for b in y.objects() {
            if f.ob(a) == g.ob(b) {
                objs.push((a, b));
            }
        }
    }
    let obj_index: FxHashMap<(Obj, Obj), Obj> = objs
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, Obj(k as u32)))
        .collect();
    let mut mors = Vec::new();
    for &(a, b) in &objs {
        for &(a2, b2) in &objs {
            for &p in x.hom(a, a2) {
                for &q in y.hom(b, b2) {
                    if f.mor(p) == g.mor(q) {
                        mors.push((p, q));
                    }
                }
            }
        }
        if mors.len() > caps.max_morphisms {
            break;
        }
    }
    caps.check("pullback", objs.len(), mors.len())?;
    let mor_index: FxHashMap<(Mor, Mor), Mor> = mors
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, Mor(k as u32)))
        .collect();
    let objects = objs
        .iter()
        .map(|&(a, b)| format!("({},{})", x.object_id(a), y.object_id(b)))
        .collect();
    let morphisms = mors
        .iter()
        .map(|&(p, q)| Morphism {
            id: format!("({},{})", x.morphism_id(p), y.morphism_id(q)),
            src: obj_index[&(x.src(p), y.src(q))],
            tgt: obj_index[&(x.tgt(p), y.tgt(q))],
        })
        .collect();
    let identity = objs
        .iter()
        .map(|&(a, b)| mor_index[&(x.id(a), y.id(b))])
        .collect();
    let inverse = mors
        .iter()
        .map(|&(p, q)| mor_index[&(x.inv(p), y.inv(q))])
        .collect();
    let grpd = FinGroupoid::from_fn(objects, morphisms, identity, inverse, |s, t| {
        let (p2, q2) = mors[s.idx()];
        let (p1, q1) = mors[t.idx()];
        mor_index[&(x.compose(p2, p1), y.compose(q2, q1))]
    });
    Ok(Pullback {
        grpd: Arc::new(grpd),
        f: f.clone(),
        g: g.clone(),
        objs,
        mors,
        obj_index,
        mor_index,
    })
}

impl Pullback {
    pub fn split_obj(&self, o: Obj) -> (Obj, Obj) {
        self.objs[o.idx()]
    }

    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        self.mors[m.idx()]
    }

    pub fn obj(&self, a: Obj, b: Obj) -> Option<Obj> {
        self.obj_index.get(&(a, b)).copied()
    }

    pub fn mor(&self, p: Mor, q: Mor) -> Option<Mor> {
        self.mor_index.get(&(p, q)).copied()
    }

    pub fn p1(&self) -> GFunctor {
        GFunctor::from_fn(
            &self.grpd,
            self.f.dom(),
            |o| self.objs[o.idx()].0,
            |m| self.mors[m.idx()].0,
        )
    }

    pub fn p2(&self) -> GFunctor {
        GFunctor::from_fn(
            &self.grpd,
            self.g.dom(),
            |o| self.objs[o.idx()].1,
            |m| self.mors[m.idx()].1,
        )
    }

    /// The unique `⟨s, t⟩` into the pullback for a commuting cone.
    pub fn universal(&self, s: &GFunctor, t: &GFunctor) -> Result<GFunctor> {
        if !same_groupoid(s.dom(), t.dom()) {
            return mismatch("cone legs with different domains");
        }
        if self.f.after(s)? != self.g.after(t)? {
            return Err(Error::Precondition("cone does not commute".into()));
        }
        let w = s.dom();
        let omap = w
            .objects()
            .map(|o| self.obj(s.ob(o), t.ob(o)).expect("commuting cone"))
            .collect();
        let mmap = w
            .morphisms()
            .map(|m| self.mor(s.mor(m), t.mor(m)).expect("commuting cone"))
            .collect();
        GFunctor::new(w.clone(), self.grpd.clone(), omap, mmap)
    }
}

/// Iso-comma (pseudopullback) of `f: X → Z` and `g: Y → Z`: objects
/// `(x, y, r: f x → g y)`, morphisms `(p, q)` with `g(q)∘r = r'∘f(p)`.
#[derive(Clone, Debug)]
pub struct IsoComma {
    pub grpd: Grpd,
    pub f: GFunctor,
    pub g: GFunctor,
    objs: Vec<(Obj, Obj, Mor)>,
    mors: Vec<(Mor, Mor)>,
    obj_index: FxHashMap<(Obj, Obj, Mor), Obj>,
    mor_index: FxHashMap<(Obj, Mor, Mor), Mor>,
}

pub fn iso_comma(f: &GFunctor, g: &GFunctor, caps: &Caps) -> Result<IsoComma> {
    if !same_groupoid(f.cod(), g.cod()) {
        return mismatch("iso-comma of functors with different codomains");
    }
    let (x, y, z) = (f.dom(), g.dom(), f.cod());
    let mut objs = Vec::new();
    for a in x.objects() {
        for b in y.objects() {
            for &r in z.hom(f.ob(a), g.ob(b)) {
                objs.push((a, b, r));
            }
        }
    }
    if objs.len() > caps.max_objects {
        return Err(Error::SizeCap {
            what: "iso-comma objects".into(),
            count: objs.len(),
            cap: caps.max_objects,
        });
    }
    let obj_index: FxHashMap<(Obj, Obj, Mor), Obj> = objs
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, Obj(k as u32)))
        .collect();
    let mut mors = Vec::new();
    let mut ends = Vec::new();
    for (k, &(a, b, r)) in objs.iter().enumerate() {
        for &p in x.outgoing(a) {
            for &q in y.outgoing(b) {
                let r2 = z.compose_path(&[z.inv(f.mor(p)), r, g.mor(q)]);
                if let Some(&t) = obj_index.get(&(x.tgt(p), y.tgt(q), r2)) {
                    mors.push((p, q));
                    ends.push((Obj(k as u32), t));
                }
            }
        }
        if mors.len() > caps.max_morphisms {
            break;
        }
    }
    caps.check("iso-comma", objs.len(), mors.len())?;
    let mor_index: FxHashMap<(Obj, Mor, Mor), Mor> = mors
        .iter()
        .zip(&ends)
        .enumerate()
        .map(|(k, (&(p, q), &(s, _)))| ((s, p, q), Mor(k as u32)))
        .collect();
    let objects = objs
        .iter()
        .map(|&(a, b, r)| {
            format!(
                "({},{},{})",
                x.object_id(a),
                y.object_id(b),
                z.morphism_id(r)
            )
        })
        .collect();
    let morphisms = mors
        .iter()
        .zip(&ends)
        .map(|(&(p, q), &(s, t))| Morphism {
            id: format!(
                "({},{})@{}",
                x.morphism_id(p),
                y.morphism_id(q),
                z.morphism_id(objs[s.idx()].2)
            ),
            src: s,
            tgt: t,
        })
        .collect();
    let identity = objs
        .iter()
        .enumerate()
        .map(|(k, &(a, b, _))| mor_index[&(Obj(k as u32), x.id(a), y.id(b))])
        .collect();
    let inverse = mors
        .iter()
        .zip(&ends)
        .map(|(&(p, q), &(_, t))| mor_index[&(t, x.inv(p), y.inv(q))])
        .collect();
    let grpd = FinGroupoid::from_fn(objects, morphisms, identity, inverse, |s, t| {
        let (p2, q2) = mors[s.idx()];
        let (p1, q1) = mors[t.idx()];
        mor_index[&(ends[t.idx()].0, x.compose(p2, p1), y.compose(q2, q1))]
    });
    Ok(IsoComma {
        grpd: Arc::new(grpd),
        f: f.clone(),
        g: g.clone(),
        objs,
        mors,
        obj_index,
        mor_index,
    })
}

impl IsoComma {
    pub fn split_obj(&self, o: Obj) -> (Obj, Obj, Mor) {
        self.objs[o.idx()]
    }

    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        self.mors[m.idx()]
    }

    pub fn obj(&self, a: Obj, b: Obj, r: Mor) -> Option<Obj> {
        self.obj_index.get(&(a, b, r)).copied()
    }

    /// Morphism with components `(p, q)` out of `src`.
    pub fn mor(&self, src: Obj, p: Mor, q: Mor) -> Option<Mor> {
        self.mor_index.get(&(src, p, q)).copied()
    }

    pub fn p1(&self) -> GFunctor {
        GFunctor::from_fn(
            &self.grpd,
            self.f.dom(),
            |o| self.objs[o.idx()].0,
            |m| self.mors[m.idx()].0,
        )
    }

    pub fn p2(&self) -> GFunctor {
        GFunctor::from_fn(
            &self.grpd,
            self.g.dom(),
            |o| self.objs[o.idx()].1,
            |m| self.mors[m.idx()].1,
        )
    }

    /// The generic isomorphism `f∘p1 ⇒ g∘p2`.
    pub fn generic(&self) -> NatIso {
        let src = self.f.after(&self.p1()).expect("iso-comma leg");
        let tgt = self.g.after(&self.p2()).expect("iso-comma leg");
        NatIso::from_fn(&src, &tgt, |o| self.objs[o.idx()].2).expect("generic isomorphism")
    }

    /// The unique `[s, t, psi]` into the iso-comma.
    pub fn universal(&self, s: &GFunctor, t: &GFunctor, psi: &NatIso) -> Result<GFunctor> {
        if *psi.src() != self.f.after(s)? || *psi.tgt() != self.g.after(t)? {
            return mismatch("cone isomorphism has the wrong boundary");
        }
        let w = s.dom();
        let omap: Vec<Obj> = w
            .objects()
            .map(|o| self.obj(s.ob(o), t.ob(o), psi.at(o)).expect("cone object"))
            .collect();
        let mmap = w
            .morphisms()
            .map(|m| {
                self.mor(omap[w.src(m).idx()], s.mor(m), t.mor(m))
                    .ok_or_else(|| Error::Precondition("cone isomorphism is not natural".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        GFunctor::new(w.clone(), self.grpd.clone(), omap, mmap)
    }
}

/// A chosen lift for every `(y, q: f(y) → z)`.
#[derive(Clone, Debug)]
pub struct Cleavage {
    functor: GFunctor,
    lifts: FxHashMap<(Obj, Mor), Mor>,
}

/// Witness that a functor is not an isofibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFailure {
    pub object: Obj,
    pub morphism: Mor,
    pub description: String,
}

impl Cleavage {
    /// Build from a lift function, checking every lift.
    pub fn from_fn(
        f: &GFunctor,
        lift: impl Fn(Obj, Mor) -> Option<Mor>,
    ) -> std::result::Result<Cleavage, LiftFailure> {
        let (x, y) = (f.dom(), f.cod());
        let mut lifts = FxHashMap::default();
        for o in x.objects() {
            for &q in y.outgoing(f.ob(o)) {
                let fail = |what: &str| LiftFailure {
                    object: o,
                    morphism: q,
                    description: format!(
                        "{what} for {} at {}",
                        y.morphism_id(q),
                        x.object_id(o)
                    ),
                };
                let m = lift(o, q).ok_or_else(|| fail("no lift"))?;
                if x.src(m) != o || f.mor(m) != q {
                    return Err(fail("declared lift does not project"));
                }
                lifts.insert((o, q), m);
            }
        }
        Ok(Cleavage {
            functor: f.clone(),
            lifts,
        })
    }

    pub fn functor(&self) -> &GFunctor {
        &self.functor
    }

    /// `q̄(y)`.
    pub fn lift(&self, y: Obj, q: Mor) -> Mor {
        self.lifts[&(y, q)]
    }

    /// `q*(y)`, the codomain of the chosen lift.
    pub fn transport(&self, y: Obj, q: Mor) -> Obj {
        self.functor.dom().tgt(self.lift(y, q))
    }

    /// Whether identities lift to identities.
    pub fn is_normal(&self) -> bool {
        let x = self.functor.dom();
        x.objects()
            .all(|o| self.lift(o, self.functor.cod().id(self.functor.ob(o))) == x.id(o))
    }
}

/// Deterministic cleavage: identities lift to identities, otherwise the
/// lift with the least identifier is chosen.
pub fn isofibration_cleavage(f: &GFunctor) -> std::result::Result<Cleavage, LiftFailure> {
    let x = f.dom();
    Cleavage::from_fn(f, |o, q| {
        if f.cod().is_identity(q) {
            return Some(x.id(o));
        }
        x.outgoing(o)
            .iter()
            .copied()
            .filter(|&m| f.mor(m) == q)
            .min_by(|&a, &b| x.morphism_id(a).cmp(x.morphism_id(b)))
    })
}

/// Why a functor is not an equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceFailure {
    NotFaithful { from: String, to: String },
    NotFull { from: String, to: String },
    NotEssentiallySurjective { object: String },
}

/// Pseudoinverse of an equivalence with deterministic representatives.
pub fn equivalence_inverse(f: &GFunctor) -> std::result::Result<EquivalenceData, EquivalenceFailure> {
    let (x, y) = (f.dom(), f.cod());
    for a in x.objects() {
        for b in x.objects() {
            let hs = x.hom(a, b);
            let mut imgs: Vec<Mor> = hs.iter().map(|&m| f.mor(m)).collect();
            imgs.sort_unstable();
            imgs.dedup();
            let names = || (x.object_id(a).to_string(), x.object_id(b).to_string());
            if imgs.len() != hs.len() {
                let (from, to) = names();
                return Err(EquivalenceFailure::NotFaithful { from, to });
            }
            if imgs.len() != y.hom(f.ob(a), f.ob(b)).len() {
                let (from, to) = names();
                return Err(EquivalenceFailure::NotFull { from, to });
            }
        }
    }
    let mut xs: Vec<Obj> = x.objects().collect();
    xs.sort_by(|&a, &b| x.object_id(a).cmp(x.object_id(b)));
    let mut rep = Vec::with_capacity(y.object_count());
    for o in y.objects() {
        let found = xs.iter().find_map(|&a| {
            y.hom(f.ob(a), o)
                .iter()
                .copied()
                .min_by(|&m, &n| {
                    let (mi, ni) = (y.is_identity(m), y.is_identity(n));
                    ni.cmp(&mi).then_with(|| y.morphism_id(m).cmp(y.morphism_id(n)))
                })
                .map(|t| (a, t))
        });
        match found {
            Some(r) => rep.push(r),
            None => {
                return Err(EquivalenceFailure::NotEssentiallySurjective {
                    object: y.object_id(o).to_string(),
                })
            }
        }
    }
    let preimage = |a: Obj, b: Obj, m: Mor| -> Mor {
        *x.hom(a, b)
            .iter()
            .find(|&&p| f.mor(p) == m)
            .expect("full functor")
    };
    let bwd = GFunctor::from_fn(
        y,
        x,
        |o| rep[o.idx()].0,
        |q| {
            let (a, t) = rep[y.src(q).idx()];
            let (b, t2) = rep[y.tgt(q).idx()];
            preimage(a, b, y.compose_path(&[t, q, y.inv(t2)]))
        },
    );
    let gf = bwd.after(f).expect("composable");
    let fg = f.after(&bwd).expect("composable");
    let unit = NatIso::from_fn(&GFunctor::identity(x), &gf, |a| {
        let (b, t) = rep[f.ob(a).idx()];
        preimage(a, b, y.inv(t))
    })
    .expect("unit");
    let counit = NatIso::from_fn(&GFunctor::identity(y), &fg, |o| y.inv(rep[o.idx()].1))
        .expect("counit");
    Ok(EquivalenceData {
        fwd: f.clone(),
        bwd,
        unit,
        counit,
    })
}

/// The subgroupoid on the objects and morphisms passing the predicates,
/// with its inclusion. The predicates must describe a subgroupoid.
pub fn subgroupoid(
    g: &Grpd,
    keep_obj: impl Fn(Obj) -> bool,
    keep_mor: impl Fn(Mor) -> bool,
) -> (Grpd, GFunctor) {
    let objs: Vec<Obj> = g.objects().filter(|&o| keep_obj(o)).collect();
    let mut obj_index = vec![None; g.object_count()];
    for (k, &o) in objs.iter().enumerate() {
        obj_index[o.idx()] = Some(Obj(k as u32));
    }
    let mors: Vec<Mor> = g
        .morphisms()
        .filter(|&m| obj_index[g.src(m).idx()].is_some() && keep_mor(m))
        .collect();
    let mut mor_index = vec![Mor(u32::MAX); g.morphism_count()];
    for (k, &m) in mors.iter().enumerate() {
        mor_index[m.idx()] = Mor(k as u32);
    }
    let inner = |o: Obj| obj_index[o.idx()].expect("kept object");
    let objects = objs.iter().map(|&o| g.object_id(o).to_string()).collect();
    let morphisms = mors
        .iter()
        .map(|&m| Morphism {
            id: g.morphism_id(m).to_string(),
            src: inner(g.src(m)),
            tgt: inner(g.tgt(m)),
        })
        .collect();
    let identity = objs.iter().map(|&o| mor_index[g.id(o).idx()]).collect();
    let inverse = mors.iter().map(|&m| mor_index[g.inv(m).idx()]).collect();
    let sub = Arc::new(FinGroupoid::from_fn(objects, morphisms, identity, inverse, |b, a| {
        mor_index[g.compose(mors[b.idx()], mors[a.idx()]).idx()]
    }));
    let incl = GFunctor::from_fn(&sub, g, |o| objs[o.idx()], |m| mors[m.idx()]);
    (sub, incl)
}

/// The strict fibre of `f` over `y`: objects over `y`, morphisms over `id_y`.
pub fn fibre(f: &GFunctor, y: Obj) -> (Grpd, GFunctor) {
    let id = f.cod().id(y);
    subgroupoid(f.dom(), |o| f.ob(o) == y, |m| f.mor(m) == id)
}

/// `C × I₁ → D` presentation of a natural isomorphism.
pub fn natiso_as_functor(n: &NatIso) -> GFunctor {
    let i = walking_iso();
    let p = product(n.dom(), &i);
    let (c, d) = (n.dom(), n.cod());
    let end = |j: Obj| if j.0 == 0 { n.src() } else { n.tgt() };
    GFunctor::from_fn(
        &p.grpd,
        d,
        |o| {
            let (x, j) = p.split_obj(o);
            end(j).ob(x)
        },
        |m| {
            let (u, v) = p.split_mor(m);
            let x = c.src(u);
            let (j, j2) = (i.src(v), i.tgt(v));
            let along = match (j.0, j2.0) {
                (0, 1) => n.at(x),
                (1, 0) => d.inv(n.at(x)),
                _ => d.id(end(j).ob(x)),
            };
            d.compose(end(j2).mor(u), along)
        },
    )
}

/// Natural isomorphism `h(−,0) ⇒ h(−,1)` of a functor out of `C × I₁`.
pub fn natiso_from_functor(h: &GFunctor, p: &Product) -> Result<NatIso> {
    let i = walking_iso();
    if !same_groupoid(&p.right, &i) || !same_groupoid(h.dom(), &p.grpd) {
        return mismatch("expected a functor out of C × I₁");
    }
    let c = &p.left;
    let at = |j: u32| {
        GFunctor::from_fn(
            c,
            h.cod(),
            |x| h.ob(p.obj(x, Obj(j))),
            |u| h.mor(p.mor(u, i.id(Obj(j)))),
        )
    };
    let arrow = i.hom(Obj(0), Obj(1))[0];
    NatIso::from_fn(&at(0), &at(1), |x| h.mor(p.mor(c.id(x), arrow)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{codiscrete, cyclic, terminal};

    #[test]
    fn product_sizes() {
        let i = walking_iso();
        let p = product(&i, &i);
        assert_eq!(p.grpd.object_count(), 4);
        assert_eq!(p.grpd.morphism_count(), 16);
        assert!(p.grpd.validate().is_valid());
        let z = cyclic(2, "o");
        let q = product(&z, &z);
        assert_eq!(q.grpd.object_count(), 1);
        assert_eq!(q.grpd.morphism_count(), 4);
    }

    #[test]
    fn exponential_sizes() {
        let caps = Caps::default();
        let i = walking_iso();
        let e = exponential(&i, &i, &caps).unwrap();
        assert_eq!(e.grpd.object_count(), 4);
        assert!(e.grpd.validate().is_valid());
        for a in e.grpd.objects() {
            for b in e.grpd.objects() {
                assert_eq!(e.grpd.hom(a, b).len(), 1);
            }
        }
        let z = cyclic(2, "o");
        let ez = exponential(&z, &z, &caps).unwrap();
        assert_eq!(ez.grpd.object_count(), 2);
        let t = terminal();
        let et = exponential(&t, &i, &caps).unwrap();
        assert_eq!(et.grpd.object_count(), 2);
        assert_eq!(et.grpd.morphism_count(), 4);
    }

    #[test]
    fn exponential_cap_names_count() {
        let ids: Vec<String> = (0..4).map(|k| k.to_string()).collect();
        let c = codiscrete(&ids);
        let err = exponential(&c, &c, &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::SizeCap { .. }), "{err:?}");
    }

    #[test]
    fn curry_then_eval_is_identity() {
        let caps = Caps::default();
        let i = walking_iso();
        let z = cyclic(2, "o");
        let zi = product(&z, &i);
        let e = exponential(&i, &z, &caps).unwrap();
        for k in enumerate::functors(&zi.grpd, &z, 1000).unwrap() {
            let kt = e.curry(&zi, &k).unwrap();
            assert!(kt.is_valid());
            let (_, back) = e.uncurry(&kt).unwrap();
            assert_eq!(back, k);
        }
    }

    #[test]
    fn iso_comma_counts() {
        let caps = Caps::default();
        let i = walking_iso();
        let id = GFunctor::identity(&i);
        assert_eq!(iso_comma(&id, &id, &caps).unwrap().grpd.object_count(), 4);
        let z = cyclic(2, "o");
        let idz = GFunctor::identity(&z);
        let c = iso_comma(&idz, &idz, &caps).unwrap();
        assert_eq!(c.grpd.object_count(), 2);
        assert!(c.grpd.validate().is_valid());
    }

    #[test]
    fn cleavage_cases() {
        let i = walking_iso();
        let t = terminal();
        let bang = GFunctor::constant(&i, &t, Obj(0));
        assert!(isofibration_cleavage(&bang).is_ok());
        let zero = GFunctor::constant(&t, &i, Obj(0));
        assert!(isofibration_cleavage(&zero).is_err());
    }

    #[test]
    fn equivalence_cases() {
        let i = walking_iso();
        let t = terminal();
        let zero = GFunctor::constant(&t, &i, Obj(0));
        let eq = equivalence_inverse(&zero).unwrap();
        assert!(eq.is_valid());
        assert_eq!(eq.bwd, GFunctor::constant(&i, &t, Obj(0)));
        let z = cyclic(2, "o");
        let bang = GFunctor::constant(&z, &t, Obj(0));
        assert!(matches!(
            equivalence_inverse(&bang),
            Err(EquivalenceFailure::NotFaithful { .. })
        ));
        let id = equivalence_inverse(&GFunctor::identity(&z)).unwrap();
        assert_eq!(id, EquivalenceData::identity(&z));
    }

    #[test]
    fn natiso_functor_round_trip() {
        let z = cyclic(3, "o");
        let id = GFunctor::identity(&z);
        let i = walking_iso();
        let p = product(&z, &i);
        for n in enumerate::natisos(&id, &id, 10).unwrap() {
            let h = natiso_as_functor(&n);
            assert!(h.is_valid());
            assert_eq!(natiso_from_functor(&h, &p).unwrap(), n);
        }
    }
}
