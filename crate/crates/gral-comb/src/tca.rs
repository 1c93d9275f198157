//! Typed combinatory algebras over SK, their unit augmentation and finite
//! fragments of closed normal forms.

use std::collections::{BTreeMap, BTreeSet};

use crate::reduce::normalize;
use crate::term::{app, apps, Term, Ty, TypeError};
use crate::{CombError, Result};

/// An SK algebra with constants at base types, optionally augmented with a
/// unit type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tca {
    pub bases: Vec<String>,
    pub constants: Vec<(String, Ty)>,
    pub unit: bool,
}

/// One equation checked by normalization.
#[derive(Clone, Debug)]
pub struct EquationCheck {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub holds: bool,
}

/// Closed normal forms grouped by type.
#[derive(Clone, Debug, Default)]
pub struct Fragment {
    pub by_type: BTreeMap<Ty, Vec<Term>>,
}

impl Fragment {
    pub fn of(&self, ty: &Ty) -> &[Term] {
        self.by_type.get(ty).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.by_type.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Tca {
    /// One base type `o` with constants `a` and `b`.
    pub fn standard() -> Tca {
        let o = Ty::base("o");
        Tca {
            bases: vec!["o".into()],
            constants: vec![("a".into(), o.clone()), ("b".into(), o)],
            unit: false,
        }
    }

    pub fn unit_augmentation(&self) -> Tca {
        Tca {
            unit: true,
            ..self.clone()
        }
    }

    fn check_ty(&self, t: &Ty) -> std::result::Result<(), TypeError> {
        if t.mentions_unit() && !self.unit {
            return Err(TypeError::NoUnit);
        }
        let mut bs = BTreeSet::new();
        t.bases(&mut bs);
        match bs.into_iter().find(|b| !self.bases.contains(b)) {
            Some(b) => Err(TypeError::UnknownBase(b)),
            None => Ok(()),
        }
    }

    /// Type of a term of this algebra.
    pub fn check(&self, t: &Term) -> Result<Ty> {
        let mut tys = BTreeSet::new();
        t.types(&mut tys);
        for ty in &tys {
            self.check_ty(ty)?;
        }
        self.check_consts(t)?;
        let mut seen: BTreeMap<String, Ty> = BTreeMap::new();
        for (n, ty) in t.free_vars() {
            if seen.insert(n.clone(), ty).is_some() {
                return Err(TypeError::VariableClash(n).into());
            }
        }
        let ty = t.type_of()?;
        self.check_ty(&ty)?;
        Ok(ty)
    }

    fn check_consts(&self, t: &Term) -> std::result::Result<(), TypeError> {
        match t {
            Term::Const(n, ty) if !self.constants.iter().any(|(m, s)| m == n && s == ty) => {
                Err(TypeError::UnknownConstant(n.clone()))
            }
            Term::App(f, a) => {
                self.check_consts(f)?;
                self.check_consts(a)
            }
            _ => Ok(()),
        }
    }

    pub fn normalize(&self, t: &Term) -> Result<Term> {
        self.check(t)?;
        Ok(normalize(t)?)
    }

    pub fn equal(&self, s: &Term, t: &Term) -> Result<bool> {
        Ok(self.normalize(s)? == self.normalize(t)?)
    }

    /// Constants, `∗` and the combinators indexed by `idx`.
    pub fn atoms(&self, idx: &[Ty]) -> Result<Vec<Term>> {
        for t in idx {
            self.check_ty(t)?;
        }
        let mut out: Vec<Term> = self
            .constants
            .iter()
            .map(|(n, t)| Term::Const(n.clone(), t.clone()))
            .collect();
        if self.unit {
            out.push(Term::Star);
        }
        for a in idx {
            out.push(Term::I(a.clone()));
            for b in idx {
                out.push(Term::K(a.clone(), b.clone()));
                for c in idx {
                    out.push(Term::S(a.clone(), b.clone(), c.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Normal forms of all well-typed closed terms of size at most
    /// `max_size` built from [`Tca::atoms`]. Fails once more than `cap`
    /// distinct normal forms appear.
    pub fn fragment(&self, idx: &[Ty], max_size: usize, cap: usize) -> Result<Fragment> {
        let mut seen: BTreeSet<Term> = BTreeSet::new();
        let mut by_size: Vec<Vec<(Term, Ty)>> = vec![Vec::new()];
        let mut frag = Fragment::default();
        let mut add = |t: Term, ty: Ty, level: &mut Vec<(Term, Ty)>| -> Result<()> {
            if seen.insert(t.clone()) {
                if seen.len() > cap {
                    return Err(CombError::Bound(format!(
                        "fragment exceeds {cap} normal forms"
                    )));
                }
                frag.by_type.entry(ty.clone()).or_default().push(t.clone());
                level.push((t, ty));
            }
            Ok(())
        };
        let mut level = Vec::new();
        for a in self.atoms(idx)? {
            let n = normalize(&a)?;
            let ty = n.type_of()?;
            add(n, ty, &mut level)?;
        }
        by_size.push(level);
        for size in 2..=max_size {
            let mut level = Vec::new();
            for ls in 1..size {
                let rs = size - ls;
                for (f, tf) in &by_size[ls] {
                    for (a, ta) in &by_size[rs] {
                        let fits = *ta == Ty::Unit
                            || *tf == Ty::Unit
                            || tf.split().is_some_and(|(d, _)| d == ta);
                        if !fits {
                            continue;
                        }
                        let n = normalize(&app(f.clone(), a.clone()))?;
                        let ty = n.type_of()?;
                        add(n, ty, &mut level)?;
                    }
                }
            }
            by_size.push(level);
        }
        Ok(frag)
    }

    /// `k a b = a` and `s f g a = f a (g a)` for indices in `idx`, on at
    /// most `per` samples per argument.
    pub fn ks_equations(&self, idx: &[Ty], frag: &Fragment, per: usize) -> Vec<EquationCheck> {
        let mut out = Vec::new();
        let take = |t: &Ty| frag.of(t).iter().take(per).cloned().collect::<Vec<_>>();
        for a in idx {
            for b in idx {
                let k = Term::K(a.clone(), b.clone());
                for x in take(a) {
                    for y in take(b) {
                        let lhs = apps(k.clone(), [x.clone(), y]);
                        out.push(self.eq_check(format!("k[{a}, {b}]"), lhs, x.clone()));
                    }
                }
                for c in idx {
                    let s = Term::S(a.clone(), b.clone(), c.clone());
                    let fs = take(&Ty::arrows(&[a.clone(), b.clone()], c.clone()));
                    let gs = take(&Ty::arrow(a.clone(), b.clone()));
                    for f in &fs {
                        for g in &gs {
                            for x in take(a) {
                                let lhs = apps(s.clone(), [f.clone(), g.clone(), x.clone()]);
                                let rhs = app(app(f.clone(), x.clone()), app(g.clone(), x));
                                out.push(self.eq_check(format!("s[{a}, {b}, {c}]"), lhs, rhs));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn eq_check(&self, name: String, lhs: Term, rhs: Term) -> EquationCheck {
        let holds = matches!(self.equal(&lhs, &rhs), Ok(true));
        EquationCheck {
            name,
            lhs,
            rhs,
            holds,
        }
    }

    /// The unit table: `1 → A = A`, `A → 1 = 1`, `k_{1,A} = s_{A,A',1} = ∗`,
    /// `k_{A,1} = s_{1,1,A} = i_A` and `s_{1,A,A'} = s_{A,1,A'} = λf a. f a`, each checked
    /// by normalization and on the samples of `frag`.
    pub fn unit_table_checks(&self, idx: &[Ty], frag: &Fragment, per: usize) -> Result<Vec<EquationCheck>> {
        if !self.unit {
            return Err(TypeError::NoUnit.into());
        }
        let mut out = Vec::new();
        let u = Ty::Unit;
        for a in idx.iter().filter(|a| **a != u) {
            let ty_ok = |name: &str, l: Ty, r: Ty| EquationCheck {
                name: name.to_string(),
                lhs: Term::I(l.clone()),
                rhs: Term::I(r.clone()),
                holds: l == r,
            };
            out.push(ty_ok("1 -> A = A", Ty::arrow(u.clone(), a.clone()), a.clone()));
            out.push(ty_ok("A -> 1 = 1", Ty::arrow(a.clone(), u.clone()), u.clone()));
            out.push(self.eq_check(format!("k[1, {a}] = *"), Term::K(u.clone(), a.clone()), Term::Star));
            out.push(self.eq_check(format!("k[{a}, 1] = i"), Term::K(a.clone(), u.clone()), Term::I(a.clone())));
            out.push(self.eq_check(format!("s[1, 1, {a}] = i"), Term::S(u.clone(), u.clone(), a.clone()), Term::I(a.clone())));
            for x in frag.of(a).iter().take(per) {
                out.push(self.eq_check(
                    format!("k[{a}, 1] x = x"),
                    app(Term::K(a.clone(), u.clone()), x.clone()),
                    x.clone(),
                ));
            }
            for b in idx.iter().filter(|b| **b != u) {
                out.push(self.eq_check(
                    format!("s[{a}, {b}, 1] = *"),
                    Term::S(a.clone(), b.clone(), u.clone()),
                    Term::Star,
                ));
                let fs: Vec<Term> = frag.of(&Ty::arrow(a.clone(), b.clone())).iter().take(per).cloned().collect();
                for f in &fs {
                    for x in frag.of(a).iter().take(per) {
                        let rhs = app(f.clone(), x.clone());
                        for s in [Term::S(u.clone(), a.clone(), b.clone()), Term::S(a.clone(), u.clone(), b.clone())] {
                            let name = format!("{s} f a = f a");
                            out.push(self.eq_check(name, apps(s, [f.clone(), x.clone()]), rhs.clone()));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> Ty {
        Ty::base("o")
    }

    #[test]
    fn unit_needs_augmentation() {
        let t = Tca::standard();
        assert!(t.check(&Term::Star).is_err());
        assert_eq!(t.unit_augmentation().check(&Term::Star).unwrap(), Ty::Unit);
    }

    #[test]
    fn fragment_contains_constants_and_identity() {
        let t = Tca::standard();
        let idx = [o(), Ty::arrow(o(), o())];
        let f = t.fragment(&idx, 3, 5000).unwrap();
        assert_eq!(f.of(&o()).len(), 2);
        assert!(f.of(&Ty::arrow(o(), o())).contains(&Term::I(o())));
        let eqs = t.ks_equations(&idx, &f, 2);
        assert!(!eqs.is_empty() && eqs.iter().all(|e| e.holds));
    }

    #[test]
    fn unit_table() {
        let t = Tca::standard().unit_augmentation();
        let idx = [o(), Ty::arrow(o(), o())];
        let f = t.fragment(&idx, 3, 5000).unwrap();
        let eqs = t.unit_table_checks(&idx, &f, 2).unwrap();
        let bad: Vec<_> = eqs.iter().filter(|e| !e.holds).map(|e| &e.name).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
