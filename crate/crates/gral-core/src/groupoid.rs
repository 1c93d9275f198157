//! Finite groupoids stored as explicit tables.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use rustc_hash::{FxHashMap, FxHasher};

use crate::error::{Error, Result};

/// Index of an object inside a [`FinGroupoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub u32);

/// Index of a morphism inside a [`FinGroupoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub u32);

impl Obj {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Shared handle to an immutable groupoid.
pub type Grpd = Arc<FinGroupoid>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// String-level tables, as read from a file. Nothing is checked yet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGroupoid {
    pub objects: Vec<String>,
    /// `(id, source, target)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(g, f, g∘f)`
    pub comp: Vec<(String, String, String)>,
    /// `(object, identity morphism)`
    pub identity: Vec<(String, String)>,
    /// `(morphism, inverse)`
    pub inverse: Vec<(String, String)>,
}

/// A finite groupoid with total composition, identity and inverse tables.
///
/// Tables are total on their declared domains once constructed; whether they
/// satisfy the groupoid axioms is a separate question answered by
/// [`FinGroupoid::validate`].
#[derive(Clone)]
pub struct FinGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Mor>,
    inverse: Vec<Mor>,
    comp: FxHashMap<(Mor, Mor), Mor>,
    outgoing: Vec<Vec<Mor>>,
    incoming: Vec<Vec<Mor>>,
    hom: FxHashMap<(Obj, Obj), Vec<Mor>>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
    fingerprint: u64,
}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGroupoid")
            .field("objects", &self.objects.len())
            .field("morphisms", &self.morphisms.len())
            .field("fingerprint", &format_args!("{:016x}", self.fingerprint))
            .finish()
    }
}

impl PartialEq for FinGroupoid {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.fingerprint == other.fingerprint
            && self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.inverse == other.inverse
            && self.comp.len() == other.comp.len()
            && self.comp.iter().all(|(k, v)| other.comp.get(k) == Some(v))
    }
}

impl Eq for FinGroupoid {}

impl Hash for FinGroupoid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint.hash(state);
    }
}

/// Pointer-or-content equality for shared groupoids.
pub fn same_groupoid(a: &Grpd, b: &Grpd) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Axiom failures found by [`FinGroupoid::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    IdentityEndpoints { object: String },
    InverseEndpoints { morphism: String },
    CompositeEndpoints { g: String, f: String },
    LeftIdentity { morphism: String },
    RightIdentity { morphism: String },
    Associativity { h: String, g: String, f: String },
    LeftInverse { morphism: String },
    RightInverse { morphism: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::IdentityEndpoints { object } => {
                write!(f, "identity at {object} is not an endomorphism of {object}")
            }
            AxiomViolation::InverseEndpoints { morphism } => {
                write!(f, "inverse of {morphism} has wrong endpoints")
            }
            AxiomViolation::CompositeEndpoints { g, f: ff } => {
                write!(f, "composite {g}∘{ff} has wrong endpoints")
            }
            AxiomViolation::LeftIdentity { morphism } => write!(f, "id∘{morphism} ≠ {morphism}"),
            AxiomViolation::RightIdentity { morphism } => write!(f, "{morphism}∘id ≠ {morphism}"),
            AxiomViolation::Associativity { h, g, f: ff } => {
                write!(f, "({h}∘{g})∘{ff} ≠ {h}∘({g}∘{ff})")
            }
            AxiomViolation::LeftInverse { morphism } => {
                write!(f, "inv({morphism})∘{morphism} is not an identity")
            }
            AxiomViolation::RightInverse { morphism } => {
                write!(f, "{morphism}∘inv({morphism}) is not an identity")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FinGroupoid {
    /// Resolve a string-level table into a groupoid. Fails with
    /// [`Error::Structural`] on dangling or duplicate identifiers and on
    /// tables that are not total on their domains.
    pub fn from_raw(raw: &RawGroupoid) -> Result<FinGroupoid> {
        let mut obj_index = HashMap::new();
        for (k, o) in raw.objects.iter().enumerate() {
            if obj_index.insert(o.clone(), Obj(k as u32)).is_some() {
                return Err(Error::Structural(format!("duplicate object id {o}")));
            }
        }
        let mut mor_index = HashMap::new();
        let mut morphisms = Vec::with_capacity(raw.morphisms.len());
        for (k, (id, s, t)) in raw.morphisms.iter().enumerate() {
            let src = *obj_index
                .get(s)
                .ok_or_else(|| Error::Structural(format!("morphism {id}: unknown source {s}")))?;
            let tgt = *obj_index
                .get(t)
                .ok_or_else(|| Error::Structural(format!("morphism {id}: unknown target {t}")))?;
            if mor_index.insert(id.clone(), Mor(k as u32)).is_some() {
                return Err(Error::Structural(format!("duplicate morphism id {id}")));
            }
            morphisms.push(Morphism {
                id: id.clone(),
                src,
                tgt,
            });
        }
        let lookup_mor = |id: &str, ctx: &str| -> Result<Mor> {
            mor_index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Structural(format!("{ctx}: unknown morphism {id}")))
        };
        let mut identity = vec![None; raw.objects.len()];
        for (o, m) in &raw.identity {
            let obj = *obj_index
                .get(o)
                .ok_or_else(|| Error::Structural(format!("ID: unknown object {o}")))?;
            let mor = lookup_mor(m, "ID")?;
            if identity[obj.idx()].replace(mor).is_some() {
                return Err(Error::Structural(format!("ID: object {o} listed twice")));
            }
        }
        let identity = identity
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                m.ok_or_else(|| {
                    Error::Structural(format!("ID: no identity for object {}", raw.objects[k]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut inverse = vec![None; morphisms.len()];
        for (m, n) in &raw.inverse {
            let a = lookup_mor(m, "INV")?;
            let b = lookup_mor(n, "INV")?;
            if inverse[a.idx()].replace(b).is_some() {
                return Err(Error::Structural(format!("INV: morphism {m} listed twice")));
            }
        }
        let inverse = inverse
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                m.ok_or_else(|| {
                    Error::Structural(format!("INV: no inverse for morphism {}", morphisms[k].id))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut comp = FxHashMap::default();
        for (g, f, h) in &raw.comp {
            let g = lookup_mor(g, "COMP")?;
            let f = lookup_mor(f, "COMP")?;
            let h = lookup_mor(h, "COMP")?;
            if morphisms[f.idx()].tgt != morphisms[g.idx()].src {
                return Err(Error::Structural(format!(
                    "COMP: {}∘{} listed but not composable",
                    morphisms[g.idx()].id,
                    morphisms[f.idx()].id
                )));
            }
            if comp.insert((g, f), h).is_some() {
                return Err(Error::Structural(format!(
                    "COMP: {}∘{} listed twice",
                    morphisms[g.idx()].id,
                    morphisms[f.idx()].id
                )));
            }
        }
        let g = Self::assemble(
            raw.objects.clone(),
            morphisms,
            identity,
            inverse,
            comp,
            Some(obj_index),
            Some(mor_index),
        );
        for b in 0..g.objects.len() {
            for &f in &g.incoming[b] {
                for &gg in &g.outgoing[b] {
                    if !g.comp.contains_key(&(gg, f)) {
                        return Err(Error::Structural(format!(
                            "COMP: missing entry for {}∘{}",
                            g.morphisms[gg.idx()].id,
                            g.morphisms[f.idx()].id
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Build from explicit parts with composition given as a function on
    /// composable pairs. Ids must be unique; the result is not validated.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        inverse: Vec<Mor>,
        compose: impl Fn(Mor, Mor) -> Mor,
    ) -> FinGroupoid {
        let n = objects.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (k, m) in morphisms.iter().enumerate() {
            outgoing[m.src.idx()].push(Mor(k as u32));
            incoming[m.tgt.idx()].push(Mor(k as u32));
        }
        let mut comp = FxHashMap::default();
        for b in 0..n {
            for &f in &incoming[b] {
                for &g in &outgoing[b] {
                    comp.insert((g, f), compose(g, f));
                }
            }
        }
        Self::assemble(objects, morphisms, identity, inverse, comp, None, None)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        inverse: Vec<Mor>,
        comp: FxHashMap<(Mor, Mor), Mor>,
        obj_index: Option<HashMap<String, Obj>>,
        mor_index: Option<HashMap<String, Mor>>,
    ) -> FinGroupoid {
        let n = objects.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut hom: FxHashMap<(Obj, Obj), Vec<Mor>> = FxHashMap::default();
        for (k, m) in morphisms.iter().enumerate() {
            let mk = Mor(k as u32);
            outgoing[m.src.idx()].push(mk);
            incoming[m.tgt.idx()].push(mk);
            hom.entry((m.src, m.tgt)).or_default().push(mk);
        }
        let obj_index = obj_index.unwrap_or_else(|| {
            objects
                .iter()
                .enumerate()
                .map(|(k, o)| (o.clone(), Obj(k as u32)))
                .collect()
        });
        let mor_index = mor_index.unwrap_or_else(|| {
            morphisms
                .iter()
                .enumerate()
                .map(|(k, m)| (m.id.clone(), Mor(k as u32)))
                .collect()
        });
        let mut hasher = FxHasher::default();
        objects.hash(&mut hasher);
        morphisms.hash(&mut hasher);
        identity.hash(&mut hasher);
        inverse.hash(&mut hasher);
        for b in 0..n {
            for &f in &incoming[b] {
                for &g in &outgoing[b] {
                    comp.get(&(g, f)).hash(&mut hasher);
                }
            }
        }
        let fingerprint = hasher.finish();
        FinGroupoid {
            objects,
            morphisms,
            identity,
            inverse,
            comp,
            outgoing,
            incoming,
            hom,
            obj_index,
            mor_index,
            fingerprint,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len() as u32).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len() as u32).map(Mor)
    }

    pub fn object_id(&self, o: Obj) -> &str {
        &self.objects[o.idx()]
    }

    pub fn morphism_id(&self, m: Mor) -> &str {
        &self.morphisms[m.idx()].id
    }

    pub fn object_by_id(&self, id: &str) -> Option<Obj> {
        self.obj_index.get(id).copied()
    }

    pub fn morphism_by_id(&self, id: &str) -> Option<Mor> {
        self.mor_index.get(id).copied()
    }

    #[inline]
    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m.idx()].src
    }

    #[inline]
    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m.idx()].tgt
    }

    #[inline]
    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o.idx()]
    }

    #[inline]
    pub fn inv(&self, m: Mor) -> Mor {
        self.inverse[m.idx()]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.src(m) == self.tgt(m) && self.id(self.src(m)) == m
    }

    /// `g ∘ f`, or `None` when `tgt(f) ≠ src(g)`.
    #[inline]
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.comp.get(&(g, f)).copied()
    }

    /// `g ∘ f`. Panics if the pair is not composable; callers compose only
    /// along matching endpoints.
    #[inline]
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        match self.comp.get(&(g, f)) {
            Some(h) => *h,
            None => panic!(
                "composing non-composable morphisms {} ∘ {}",
                self.morphism_id(g),
                self.morphism_id(f)
            ),
        }
    }

    /// Composite of a path given first-to-last.
    pub fn compose_path(&self, path: &[Mor]) -> Mor {
        let mut it = path.iter();
        let first = *it.next().expect("empty path");
        it.fold(first, |acc, &m| self.compose(m, acc))
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        self.hom.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn outgoing(&self, a: Obj) -> &[Mor] {
        &self.outgoing[a.idx()]
    }

    pub fn incoming(&self, a: Obj) -> &[Mor] {
        &self.incoming[a.idx()]
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Composable pairs `(g, f)` in a fixed order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.objects().flat_map(move |b| {
            self.incoming(b)
                .iter()
                .flat_map(move |&f| self.outgoing(b).iter().map(move |&g| (g, f)))
        })
    }

    /// Check every groupoid axiom by scanning the tables.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mid = |m: Mor| self.morphism_id(m).to_string();
        for o in self.objects() {
            let i = self.id(o);
            if self.src(i) != o || self.tgt(i) != o {
                violations.push(AxiomViolation::IdentityEndpoints {
                    object: self.object_id(o).to_string(),
                });
            }
        }
        for m in self.morphisms() {
            let n = self.inv(m);
            if self.src(n) != self.tgt(m) || self.tgt(n) != self.src(m) {
                violations.push(AxiomViolation::InverseEndpoints { morphism: mid(m) });
            }
        }
        for (g, f) in self.composable_pairs() {
            let h = self.compose(g, f);
            if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                violations.push(AxiomViolation::CompositeEndpoints { g: mid(g), f: mid(f) });
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for m in self.morphisms() {
            if self.compose(self.id(self.tgt(m)), m) != m {
                violations.push(AxiomViolation::LeftIdentity { morphism: mid(m) });
            }
            if self.compose(m, self.id(self.src(m))) != m {
                violations.push(AxiomViolation::RightIdentity { morphism: mid(m) });
            }
            let n = self.inv(m);
            if self.compose(n, m) != self.id(self.src(m)) {
                violations.push(AxiomViolation::LeftInverse { morphism: mid(m) });
            }
            if self.compose(m, n) != self.id(self.tgt(m)) {
                violations.push(AxiomViolation::RightInverse { morphism: mid(m) });
            }
        }
        for (g, f) in self.composable_pairs() {
            let gf = self.compose(g, f);
            for &h in self.outgoing(self.tgt(g)) {
                if self.compose(self.compose(h, g), f) != self.compose(h, gf) {
                    violations.push(AxiomViolation::Associativity {
                        h: mid(h),
                        g: mid(g),
                        f: mid(f),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Back to string-level tables, in index order.
    pub fn to_raw(&self) -> RawGroupoid {
        RawGroupoid {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| {
                    (
                        m.id.clone(),
                        self.objects[m.src.idx()].clone(),
                        self.objects[m.tgt.idx()].clone(),
                    )
                })
                .collect(),
            comp: self
                .composable_pairs()
                .map(|(g, f)| {
                    (
                        self.morphism_id(g).to_string(),
                        self.morphism_id(f).to_string(),
                        self.morphism_id(self.compose(g, f)).to_string(),
                    )
                })
                .collect(),
            identity: self
                .objects()
                .map(|o| {
                    (
                        self.object_id(o).to_string(),
                        self.morphism_id(self.id(o)).to_string(),
                    )
                })
                .collect(),
            inverse: self
                .morphisms()
                .map(|m| {
                    (
                        self.morphism_id(m).to_string(),
                        self.morphism_id(self.inv(m)).to_string(),
                    )
                })
                .collect(),
        }
    }

    /// Connected components as lists of objects, each list sorted by index.
    pub fn components(&self) -> Vec<Vec<Obj>> {
        let mut seen = vec![false; self.object_count()];
        let mut out = Vec::new();
        for o in self.objects() {
            if seen[o.idx()] {
                continue;
            }
            let comp: Vec<Obj> = self
                .objects()
                .filter(|&x| !self.hom(o, x).is_empty())
                .collect();
            for x in &comp {
                seen[x.idx()] = true;
            }
            out.push(comp);
        }
        out
    }
}

/// Incremental construction where morphisms carry a structural key and
/// composition is computed on keys.
pub struct Builder<K> {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    keys: Vec<K>,
    index: FxHashMap<K, Mor>,
}

impl<K: Clone + Eq + Hash> Default for Builder<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Clone + Eq + Hash> Builder<K> {
    pub fn new() -> Self {
        Builder {
            objects: Vec::new(),
            morphisms: Vec::new(),
            keys: Vec::new(),
            index: FxHashMap::default(),
        }
    }

    pub fn add_object(&mut self, id: impl Into<String>) -> Obj {
        self.objects.push(id.into());
        Obj(self.objects.len() as u32 - 1)
    }

    pub fn add_morphism(&mut self, id: impl Into<String>, src: Obj, tgt: Obj, key: K) -> Mor {
        let m = Mor(self.morphisms.len() as u32);
        self.morphisms.push(Morphism {
            id: id.into(),
            src,
            tgt,
        });
        self.index.insert(key.clone(), m);
        self.keys.push(key);
        m
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn lookup(&self, key: &K) -> Option<Mor> {
        self.index.get(key).copied()
    }

    pub fn finish(
        self,
        compose: impl Fn(&K, &K) -> K,
        identity: impl Fn(Obj) -> K,
        inverse: impl Fn(&K) -> K,
    ) -> Result<FinGroupoid> {
        let Builder {
            objects,
            morphisms,
            keys,
            index,
        } = self;
        if index.len() != keys.len() {
            return Err(Error::Structural("duplicate morphism keys".into()));
        }
        let find = |k: &K, what: &str| -> Result<Mor> {
            index
                .get(k)
                .copied()
                .ok_or_else(|| Error::Structural(format!("{what} not closed under construction")))
        };
        let mut ids = HashMap::new();
        for (k, m) in morphisms.iter().enumerate() {
            if ids.insert(m.id.clone(), Mor(k as u32)).is_some() {
                return Err(Error::Structural(format!("duplicate morphism id {}", m.id)));
            }
        }
        let mut obj_ids = HashMap::new();
        for (k, o) in objects.iter().enumerate() {
            if obj_ids.insert(o.clone(), Obj(k as u32)).is_some() {
                return Err(Error::Structural(format!("duplicate object id {o}")));
            }
        }
        let identity = (0..objects.len() as u32)
            .map(|o| find(&identity(Obj(o)), "identity"))
            .collect::<Result<Vec<_>>>()?;
        let inverse = keys
            .iter()
            .map(|k| find(&inverse(k), "inverse"))
            .collect::<Result<Vec<_>>>()?;
        let n = objects.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (k, m) in morphisms.iter().enumerate() {
            outgoing[m.src.idx()].push(Mor(k as u32));
            incoming[m.tgt.idx()].push(Mor(k as u32));
        }
        let mut comp = FxHashMap::default();
        for b in 0..n {
            for &f in &incoming[b] {
                for &g in &outgoing[b] {
                    let h = find(&compose(&keys[g.idx()], &keys[f.idx()]), "composition")?;
                    comp.insert((g, f), h);
                }
            }
        }
        Ok(FinGroupoid::assemble(
            objects,
            morphisms,
            identity,
            inverse,
            comp,
            Some(obj_ids),
            Some(ids),
        ))
    }
}

/// The one-object, one-morphism groupoid.
pub fn terminal() -> Grpd {
    static T: OnceLock<Grpd> = OnceLock::new();
    T.get_or_init(|| Arc::new(codiscrete_named(&["*".to_string()], |_, _| "id*".into())))
        .clone()
}

/// Codiscrete groupoid on the given objects: exactly one morphism between
/// any two objects. Morphisms are named `a>b`, identities `id_a`.
pub fn codiscrete(ids: &[String]) -> Grpd {
    Arc::new(codiscrete_named(ids, |a, b| {
        if a == b {
            format!("id_{}", ids[a])
        } else {
            format!("{}>{}", ids[a], ids[b])
        }
    }))
}

fn codiscrete_named(ids: &[String], name: impl Fn(usize, usize) -> String) -> FinGroupoid {
    let mut b: Builder<(usize, usize)> = Builder::new();
    let objs: Vec<Obj> = ids.iter().map(|i| b.add_object(i.clone())).collect();
    for (a, &oa) in objs.iter().enumerate() {
        for (c, &oc) in objs.iter().enumerate() {
            b.add_morphism(name(a, c), oa, oc, (a, c));
        }
    }
    b.finish(|g, f| (f.0, g.1), |o| (o.idx(), o.idx()), |k| (k.1, k.0))
        .expect("codiscrete groupoid is closed")
}

/// The codiscrete chain `0 ≅ 1 ≅ … ≅ n` used for the interval objects.
///
/// Adjacent edges are `i0, i1, …` (just `i` when `n = 1`), longer forward
/// composites are written right-to-left (`i1i0`), backward morphisms carry
/// a `^-1` suffix.
pub fn chain(n: usize) -> FinGroupoid {
    let ids: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
    let edge = |k: usize| {
        if n == 1 {
            "i".to_string()
        } else {
            format!("i{k}")
        }
    };
    codiscrete_named(&ids, |a, b| {
        if a == b {
            format!("id{a}")
        } else {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let word: String = (lo..hi).rev().map(edge).collect();
            if a < b {
                word
            } else if hi - lo == 1 {
                format!("{word}^-1")
            } else {
                format!("({word})^-1")
            }
        }
    })
}

/// The walking isomorphism `0 ⇄ 1`.
pub fn walking_iso() -> Grpd {
    static I1: OnceLock<Grpd> = OnceLock::new();
    I1.get_or_init(|| Arc::new(chain(1))).clone()
}

pub fn chain2() -> Grpd {
    static I2: OnceLock<Grpd> = OnceLock::new();
    I2.get_or_init(|| Arc::new(chain(2))).clone()
}

pub fn chain3() -> Grpd {
    static I3: OnceLock<Grpd> = OnceLock::new();
    I3.get_or_init(|| Arc::new(chain(3))).clone()
}

/// One-object groupoid of the cyclic group of the given order; morphisms
/// are `g^0 … g^{n-1}` with `g^0` the identity.
pub fn cyclic(order: usize, object: &str) -> Grpd {
    assert!(order > 0, "cyclic group of order zero");
    let mut b: Builder<usize> = Builder::new();
    let o = b.add_object(object);
    for k in 0..order {
        b.add_morphism(format!("g^{k}"), o, o, k);
    }
    Arc::new(
        b.finish(|g, f| (g + f) % order, |_| 0, |k| (order - k) % order)
            .expect("cyclic group is closed"),
    )
}

/// Discrete groupoid: identities only.
pub fn discrete(ids: &[String]) -> Grpd {
    let mut b: Builder<usize> = Builder::new();
    for (k, i) in ids.iter().enumerate() {
        let o = b.add_object(i.clone());
        b.add_morphism(format!("id_{i}"), o, o, k);
    }
    Arc::new(
        b.finish(|g, _| *g, |o| o.idx(), |k| *k)
            .expect("discrete groupoid is closed"),
    )
}

/// Disjoint union; ids are prefixed with `c{k}.`.
pub fn disjoint_union(parts: &[Grpd]) -> Grpd {
    let mut b: Builder<(usize, Mor)> = Builder::new();
    let mut offsets = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        let base = b.object_count() as u32;
        offsets.push(base);
        for o in p.objects() {
            b.add_object(format!("c{k}.{}", p.object_id(o)));
        }
        for m in p.morphisms() {
            b.add_morphism(
                format!("c{k}.{}", p.morphism_id(m)),
                Obj(base + p.src(m).0),
                Obj(base + p.tgt(m).0),
                (k, m),
            );
        }
    }
    let locate = |o: Obj| -> (usize, Obj) {
        let k = offsets.iter().rposition(|&off| off <= o.0).expect("offset");
        (k, Obj(o.0 - offsets[k]))
    };
    Arc::new(
        b.finish(
            |g, f| (g.0, parts[g.0].compose(g.1, f.1)),
            |o| {
                let (k, local) = locate(o);
                (k, parts[k].id(local))
            },
            |m| (m.0, parts[m.0].inv(m.1)),
        )
        .expect("disjoint union is closed"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_walking_iso() -> RawGroupoid {
        let s = |x: &str| x.to_string();
        RawGroupoid {
            objects: vec![s("0"), s("1")],
            morphisms: vec![
                (s("id0"), s("0"), s("0")),
                (s("id1"), s("1"), s("1")),
                (s("i"), s("0"), s("1")),
                (s("j"), s("1"), s("0")),
            ],
            comp: vec![
                (s("id0"), s("id0"), s("id0")),
                (s("j"), s("i"), s("id0")),
                (s("i"), s("id0"), s("i")),
                (s("id1"), s("i"), s("i")),
                (s("id1"), s("id1"), s("id1")),
                (s("i"), s("j"), s("id1")),
                (s("j"), s("id1"), s("j")),
                (s("id0"), s("j"), s("j")),
            ],
            identity: vec![(s("0"), s("id0")), (s("1"), s("id1"))],
            inverse: vec![
                (s("id0"), s("id0")),
                (s("id1"), s("id1")),
                (s("i"), s("j")),
                (s("j"), s("i")),
            ],
        }
    }

    #[test]
    fn walking_iso_from_tables_is_valid() {
        let g = FinGroupoid::from_raw(&raw_walking_iso()).unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(g.morphism_count(), 4);
    }

    #[test]
    fn terminal_is_valid() {
        let t = terminal();
        assert_eq!(t.object_count(), 1);
        assert_eq!(t.morphism_count(), 1);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn idempotent_endomorphism_violates_inverse_law() {
        let s = |x: &str| x.to_string();
        let raw = RawGroupoid {
            objects: vec![s("o")],
            morphisms: vec![(s("id"), s("o"), s("o")), (s("t"), s("o"), s("o"))],
            comp: vec![
                (s("id"), s("id"), s("id")),
                (s("id"), s("t"), s("t")),
                (s("t"), s("id"), s("t")),
                (s("t"), s("t"), s("t")),
            ],
            identity: vec![(s("o"), s("id"))],
            inverse: vec![(s("id"), s("id")), (s("t"), s("t"))],
        };
        let g = FinGroupoid::from_raw(&raw).unwrap();
        let report = g.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::LeftInverse { morphism } if morphism == "t")));
    }

    #[test]
    fn dangling_identifier_is_structural() {
        let mut raw = raw_walking_iso();
        raw.morphisms[2].2 = "7".into();
        assert!(matches!(
            FinGroupoid::from_raw(&raw),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn missing_composite_is_structural() {
        let mut raw = raw_walking_iso();
        raw.comp.pop();
        assert!(matches!(
            FinGroupoid::from_raw(&raw),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn chain_names_match_interval_conventions() {
        let i2 = chain2();
        for id in ["i0", "i1", "i1i0", "i0^-1", "(i1i0)^-1"] {
            assert!(i2.morphism_by_id(id).is_some(), "{id}");
        }
        let i = walking_iso();
        assert!(i.morphism_by_id("i").is_some());
        assert!(i.morphism_by_id("i^-1").is_some());
        let two = i2.compose(
            i2.morphism_by_id("i1").unwrap(),
            i2.morphism_by_id("i0").unwrap(),
        );
        assert_eq!(i2.morphism_id(two), "i1i0");
    }

    #[test]
    fn standard_groupoids_validate() {
        let ids: Vec<String> = (0..4).map(|k| format!("x{k}")).collect();
        for g in [
            codiscrete(&ids),
            cyclic(5, "o"),
            discrete(&ids),
            chain3(),
            disjoint_union(&[cyclic(3, "a"), codiscrete(&ids[..2])]),
        ] {
            assert!(g.validate().is_valid());
        }
    }

    #[test]
    fn raw_round_trip() {
        let g = cyclic(4, "o");
        let back = FinGroupoid::from_raw(&g.to_raw()).unwrap();
        assert_eq!(*g, back);
    }
}
