//! Seeded instance generators. The same seed and salt always give the same
//! sequence of instances.

use gral_comb::poly;
use gral_comb::{Tca, Term, Ty};
use gral_core::construct::{product_capped, Cleavage};
use gral_core::groupoid::{codiscrete, cyclic, disjoint_union, Grpd};
use gral_core::{enumerate, Caps, GFunctor, NatIso};
use gral_pgasm::asm::find_realizer;
use gral_pgasm::category::discrete_assembly;
use gral_pgasm::pathcat::{equivalence, is_fibration, Equivalence, Fibration};
use gral_pgasm::{Asm, Assembly, ProductAsm, RealizedMorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    rng: ChaCha8Rng,
    pub caps: Caps,
}

fn fnv(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

impl Gen {
    /// `salt` separates the streams of different suites.
    pub fn new(seed: u64, salt: &str, caps: Caps) -> Gen {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(fnv(salt));
        Gen { rng, caps }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n.max(1))
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len())]
    }

    /// A codiscrete groupoid or a one-object cyclic group, of order at most
    /// `max_order`.
    pub fn component(&mut self, max_order: usize) -> Grpd {
        let n = 1 + self.below(max_order.max(1));
        if self.coin(0.5) {
            let ids: Vec<String> = (0..n).map(|k| ((b'a' + k as u8) as char).to_string()).collect();
            codiscrete(&ids)
        } else {
            cyclic(n, "o")
        }
    }

    /// A disjoint union of at most `max_parts` components, occasionally a
    /// product of two components.
    pub fn groupoid(&mut self, max_parts: usize, max_order: usize) -> Grpd {
        if self.coin(0.2) {
            let (a, b) = (self.component(max_order), self.component(max_order));
            if let Ok(p) = product_capped(&a, &b, &self.caps) {
                return p.grpd;
            }
        }
        let k = 1 + self.below(max_parts.max(1));
        let parts: Vec<Grpd> = (0..k).map(|_| self.component(max_order)).collect();
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            disjoint_union(&parts)
        }
    }

    /// A uniformly chosen functor, if there are few enough to enumerate.
    pub fn functor(&mut self, dom: &Grpd, cod: &Grpd) -> Option<GFunctor> {
        let all = enumerate::functors(dom, cod, self.caps.max_morphisms).ok()?;
        if all.is_empty() {
            return None;
        }
        Some(self.pick(&all).clone())
    }

    pub fn natiso(&mut self, f: &GFunctor, g: &GFunctor) -> Option<NatIso> {
        let all = enumerate::natisos(f, g, self.caps.max_morphisms).ok()?;
        if all.is_empty() {
            return None;
        }
        Some(self.pick(&all).clone())
    }

    /// An assembly with a random realizability functor.
    pub fn assembly(&mut self, max_parts: usize, max_order: usize) -> Asm {
        loop {
            let base = self.groupoid(max_parts, max_order);
            let rtype = self.groupoid(max_parts, max_order);
            if let Some(rfun) = self.functor(&base, &rtype) {
                return Assembly::of(&rfun);
            }
        }
    }

    /// An assembly whose realizability functor is full and faithful.
    pub fn modest_assembly(&mut self, max_parts: usize, max_order: usize) -> Asm {
        loop {
            let x = self.assembly(max_parts, max_order);
            if x.is_modest() {
                return x;
            }
            if self.coin(0.5) {
                return Assembly::of(&GFunctor::identity(&x.base));
            }
        }
    }

    /// A realized map with a random underlying functor, if one is found in
    /// a few attempts.
    pub fn realized_map(&mut self, x: &Asm, y: &Asm) -> Option<RealizedMorphism> {
        let all = enumerate::functors(&x.base, &y.base, self.caps.max_morphisms).ok()?;
        if all.is_empty() {
            return None;
        }
        for _ in 0..8 {
            let f = self.pick(&all).clone();
            if let Ok(Some(m)) = find_realizer(x, y, &f, &self.caps) {
                return Some(m);
            }
        }
        None
    }

    /// A realized map `G` naturally isomorphic to `f`, with a random
    /// `f ⇒ G`.
    pub fn iso_map(&mut self, f: &RealizedMorphism) -> Option<(RealizedMorphism, NatIso)> {
        let all = enumerate::functors(&f.src.base, &f.tgt.base, self.caps.max_morphisms).ok()?;
        let near: Vec<(GFunctor, Vec<NatIso>)> = all
            .into_iter()
            .filter_map(|g| {
                let ns = enumerate::natisos(&f.fun, &g, self.caps.max_morphisms).ok()?;
                (!ns.is_empty()).then_some((g, ns))
            })
            .collect();
        for _ in 0..4 {
            let (g, ns) = self.pick(&near);
            if let Ok(Some(m)) = find_realizer(&f.src, &f.tgt, g, &self.caps) {
                let n = self.pick(ns).clone();
                return Some((m, n));
            }
        }
        None
    }

    /// `π₁: X × E → X` with the split cleavage `q ↦ (q, id)`.
    pub fn projection(&mut self, x: &Asm, e: &Asm) -> Option<(ProductAsm, Fibration)> {
        let p = gral_pgasm::asm::product(x, e, &self.caps).ok()?;
        let fst = p.fst();
        let base = p.base.clone();
        let cl = Cleavage::from_fn(&fst.fun, |o, q| {
            let (_, b) = base.split_obj(o);
            Some(base.mor(q, base.right.id(b)))
        })
        .ok()?;
        let f = Fibration::with_cleavage(fst, cl).ok()?;
        Some((p, f))
    }

    /// A fibration out of `y`: the map to the terminal assembly, the
    /// identity or a random isofibration.
    pub fn fibration_from(&mut self, y: &Asm) -> Fibration {
        loop {
            let m = match self.below(3) {
                0 => RealizedMorphism::to_terminal(y),
                1 => RealizedMorphism::identity(y),
                _ => {
                    let z = self.assembly(1, 2);
                    match self.realized_map(y, &z) {
                        Some(m) => m,
                        None => continue,
                    }
                }
            };
            if let Ok(f) = is_fibration(&m) {
                return f;
            }
        }
    }

    /// An acyclic fibration with its equivalence data.
    pub fn acyclic_fibration(&mut self, max_parts: usize, max_order: usize) -> (Fibration, Equivalence) {
        loop {
            let f = self.fibration(max_parts, max_order);
            if let Ok(Some(e)) = equivalence(&f.map, &self.caps) {
                return (f, e);
            }
        }
    }

    /// Fault fixture: `π₁: X × Z₂ → X` whose cleavage lifts every `q` to
    /// `(q, g)` with `g` the generator, so identities do not lift to
    /// identities.
    pub fn broken_projection(&mut self, x: &Asm) -> Option<Fibration> {
        let e = discrete_assembly(&cyclic(2, "z"));
        let p = gral_pgasm::asm::product(x, &e, &self.caps).ok()?;
        let fst = p.fst();
        let z = &p.base.right;
        let gen = z.morphisms().find(|&m| !z.is_identity(m))?;
        let base = p.base.clone();
        let cl = Cleavage::from_fn(&fst.fun, |_, q| Some(base.mor(q, gen))).ok()?;
        Fibration::with_cleavage(fst, cl).ok()
    }

    /// A split fibration: a map to the terminal assembly, a projection, an
    /// identity or a random isofibration whose cleavage happens to be split.
    pub fn fibration(&mut self, max_parts: usize, max_order: usize) -> Fibration {
        loop {
            let x = self.assembly(max_parts, max_order);
            let kind = self.below(4);
            let f = match kind {
                0 => is_fibration(&RealizedMorphism::to_terminal(&x)).ok(),
                1 => {
                    let e = self.assembly(1, 2);
                    self.projection(&x, &e).map(|(_, f)| f)
                }
                2 => is_fibration(&RealizedMorphism::identity(&x)).ok(),
                _ => {
                    let y = self.assembly(max_parts, max_order);
                    self.realized_map(&x, &y)
                        .and_then(|m| is_fibration(&m).ok())
                        .filter(is_split)
                }
            };
            if let Some(f) = f {
                return f;
            }
        }
    }

    /// All realized endomaps of `x`.
    pub fn endomaps(&mut self, x: &Asm) -> Vec<RealizedMorphism> {
        let Ok(all) = enumerate::functors(&x.base, &x.base, self.caps.max_morphisms) else {
            return vec![RealizedMorphism::identity(x)];
        };
        all.iter()
            .filter_map(|f| find_realizer(x, x, f, &self.caps).ok().flatten())
            .collect()
    }

    /// A random term of type `ty` with free variables among `vars`.
    pub fn polynomial(&mut self, tca: &Tca, ty: &Ty, depth: usize, vars: &[(String, Ty)], args: &[Ty]) -> Term {
        let rng = &mut self.rng;
        let mut choose = |n: usize| rng.gen_range(0..n.max(1));
        poly::polynomial(tca, ty, depth, vars, args, &mut choose)
    }

    pub fn leaf(&mut self, tca: &Tca, ty: &Ty) -> Term {
        let rng = &mut self.rng;
        let mut choose = |n: usize| rng.gen_range(0..n.max(1));
        poly::leaf(tca, ty, &mut choose)
    }
}

/// Identities lift to identities and lifts compose.
pub fn is_split(f: &Fibration) -> bool {
    let fun = &f.map.fun;
    let (x, y) = (fun.dom(), fun.cod());
    if !f.cleavage.is_normal() {
        return false;
    }
    x.objects().all(|o| {
        y.outgoing(fun.ob(o)).iter().all(|&q| {
            let l = f.lift(o, q);
            y.outgoing(y.tgt(q))
                .iter()
                .all(|&q2| f.lift(o, y.compose(q2, q)) == x.compose(f.lift(x.tgt(l), q2), l))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let caps = Caps::default();
        let mut a = Gen::new(5, "t", caps);
        let mut b = Gen::new(5, "t", caps);
        for _ in 0..20 {
            let (g, h) = (a.groupoid(2, 3), b.groupoid(2, 3));
            assert_eq!(*g, *h);
            assert!(g.validate().is_valid());
        }
        let mut c = Gen::new(0, "t", caps);
        for _ in 0..10 {
            let f = c.fibration(2, 2);
            assert!(f.map.is_valid());
            assert!(is_split(&f));
        }
    }

    #[test]
    fn single_codiscrete_point_is_terminal() {
        let g = codiscrete(&["*".to_string()]);
        assert_eq!(g.object_count(), 1);
        assert_eq!(g.morphism_count(), 1);
    }
}
