//! `R(A)`: types as objects, computable functions as morphisms.
//!
//! Each type is interpreted by its carrier in a fixed fragment. A computable
//! function is a table between carriers together with a term realizing it.

use std::collections::HashMap;

use crate::reduce::{bracket_abstract, normalize};
use crate::tca::{Fragment, Tca};
use crate::term::{app, var, Term, Ty, TypeError};
use crate::{CombError, Result};

/// A function between carriers witnessed by `e` with `e·x = f(x)`.
#[derive(Clone, Debug)]
pub struct Computable {
    pub src: Ty,
    pub tgt: Ty,
    pub table: Vec<usize>,
    pub witness: Term,
}

impl PartialEq for Computable {
    fn eq(&self, o: &Self) -> bool {
        self.src == o.src && self.tgt == o.tgt && self.table == o.table
    }
}

impl Eq for Computable {}

pub struct RCat {
    pub tca: Tca,
    pub frag: Fragment,
    index: HashMap<Ty, HashMap<Term, usize>>,
}

impl RCat {
    /// The carriers are the closed normal forms of size at most `max_size`.
    pub fn new(tca: &Tca, idx: &[Ty], max_size: usize, cap: usize) -> Result<RCat> {
        if !tca.unit {
            return Err(CombError::Precondition("R(A) needs the unit augmentation".into()));
        }
        let frag = tca.fragment(idx, max_size, cap)?;
        let index = frag
            .by_type
            .iter()
            .map(|(t, xs)| (t.clone(), xs.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()))
            .collect();
        Ok(RCat {
            tca: tca.clone(),
            frag,
            index,
        })
    }

    pub fn carrier(&self, ty: &Ty) -> &[Term] {
        self.frag.of(ty)
    }

    pub fn index_of(&self, ty: &Ty, t: &Term) -> Option<usize> {
        self.index.get(ty)?.get(t).copied()
    }

    /// `e ↦ e·(−)`.
    pub fn represent(&self, src: &Ty, tgt: &Ty, e: &Term) -> Result<Computable> {
        let ty = self.tca.check(e)?;
        let want = Ty::arrow(src.clone(), tgt.clone());
        if ty != want {
            return Err(TypeError::Mismatch { fun: ty, arg: want }.into());
        }
        let table = self
            .carrier(src)
            .iter()
            .map(|x| {
                let y = normalize(&app(e.clone(), x.clone()))?;
                self.index_of(tgt, &y)
                    .ok_or_else(|| CombError::Bound(format!("{y} is outside the carrier of {tgt}")))
            })
            .collect::<Result<_>>()?;
        Ok(Computable {
            src: src.clone(),
            tgt: tgt.clone(),
            table,
            witness: normalize(e)?,
        })
    }

    /// Distinct computable functions witnessed by the carrier of `A → B`.
    pub fn hom(&self, a: &Ty, b: &Ty) -> Vec<Computable> {
        let mut out: Vec<Computable> = Vec::new();
        for e in self.carrier(&Ty::arrow(a.clone(), b.clone())) {
            if let Ok(c) = self.represent(a, b, e) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn identity(&self, a: &Ty) -> Result<Computable> {
        let w = bracket_abstract(&var("x", a.clone()), "x", a)?;
        self.represent(a, a, &w)
    }

    /// `g ∘ f`, witnessed by `[x] e_g (e_f x)`. The witness is checked
    /// against the composite table.
    pub fn compose(&self, g: &Computable, f: &Computable) -> Result<Computable> {
        if f.tgt != g.src {
            return Err(CombError::Precondition("computable functions do not compose".into()));
        }
        let x = var("x", f.src.clone());
        let body = app(g.witness.clone(), app(f.witness.clone(), x));
        let w = normalize(&bracket_abstract(&body, "x", &f.src)?)?;
        let table: Vec<usize> = f.table.iter().map(|&i| g.table[i]).collect();
        let c = self.represent(&f.src, &g.tgt, &w)?;
        if c.table != table {
            return Err(CombError::Precondition("composite witness computes a different table".into()));
        }
        Ok(c)
    }

    /// The point `1 → A` at the `i`-th element of the carrier.
    pub fn point(&self, a: &Ty, i: usize) -> Result<Computable> {
        let e = self
            .carrier(a)
            .get(i)
            .ok_or_else(|| CombError::Precondition(format!("no element {i} of {a}")))?;
        self.represent(&Ty::Unit, a, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> Ty {
        Ty::base("o")
    }

    fn rcat() -> RCat {
        let t = Tca::standard().unit_augmentation();
        RCat::new(&t, &[o(), Ty::arrow(o(), o())], 3, 5000).unwrap()
    }

    #[test]
    fn points_are_elements() {
        let r = rcat();
        let pts = r.hom(&Ty::Unit, &o());
        assert_eq!(pts.len(), r.carrier(&o()).len());
        for (i, _) in r.carrier(&o()).iter().enumerate() {
            assert_eq!(r.point(&o(), i).unwrap().table, vec![i]);
        }
    }

    #[test]
    fn category_laws() {
        let r = rcat();
        let fs = r.hom(&o(), &o());
        assert!(fs.len() >= 3);
        let id = r.identity(&o()).unwrap();
        for f in &fs {
            assert_eq!(&r.compose(&id, f).unwrap(), f);
            assert_eq!(&r.compose(f, &id).unwrap(), f);
            for g in &fs {
                for h in &fs {
                    let l = r.compose(h, &r.compose(g, f).unwrap()).unwrap();
                    let rr = r.compose(&r.compose(h, g).unwrap(), f).unwrap();
                    assert_eq!(l, rr);
                }
            }
        }
    }
}
