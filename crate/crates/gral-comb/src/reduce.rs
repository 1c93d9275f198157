//! Normalization and bracket abstraction.
//!
//! Rewrite rules: `K a b → a`, `S f g a → f a (g a)`, `I a → a`, and for the
//! unit type `a·∗ → a`, `∗·a → ∗`. Every term of type `1` normalizes to `∗`.
//! Combinators at unit indices are first replaced by their table entries:
//! `k_{A,1} = s_{1,1,A} = i_A`, `s_{1,A,A'} = s_{A,1,A'} = λf a. f a`, and
//! `k_{1,A} = s_{A,A',1} = ∗` (these have type `1`).

use crate::term::{app, var, Term, Ty, TypeError};

/// Normal form of a well-typed term.
pub fn normalize(t: &Term) -> Result<Term, TypeError> {
    t.type_of()?;
    Ok(nf(t))
}

fn ty(t: &Term) -> Ty {
    t.type_of().expect("well-typed by construction")
}

/// `λf a. f a` at `f: A → B`.
pub fn apply_combinator(a: &Ty, b: &Ty) -> Term {
    let f = var("f", Ty::arrow(a.clone(), b.clone()));
    let x = var("a", a.clone());
    let inner = bracket_abstract(&app(f, x), "a", a).expect("typed body");
    bracket_abstract(&inner, "f", &Ty::arrow(a.clone(), b.clone())).expect("typed body")
}

/// Table entry for a combinator at unit indices, if any.
pub fn unit_table(head: &Term) -> Option<Term> {
    match head {
        Term::K(a, Ty::Unit) if *a != Ty::Unit => Some(Term::I(a.clone())),
        Term::S(Ty::Unit, Ty::Unit, a) if *a != Ty::Unit => Some(Term::I(a.clone())),
        Term::S(Ty::Unit, a, b) | Term::S(a, Ty::Unit, b) if *a != Ty::Unit && *b != Ty::Unit => {
            Some(apply_combinator(a, b))
        }
        _ => None,
    }
}

fn nf(t: &Term) -> Term {
    if ty(t) == Ty::Unit {
        return Term::Star;
    }
    let (h, args) = t.spine();
    let mut head = h.clone();
    let mut args: Vec<Term> = args.into_iter().cloned().collect();
    loop {
        args.retain(|a| ty(a) != Ty::Unit);
        if let Some(r) = unit_table(&head) {
            head = r;
        }
        let fired = match &head {
            Term::K(..) if args.len() >= 2 => {
                let a = args.remove(0);
                args.remove(0);
                Some(a)
            }
            Term::S(..) if args.len() >= 3 => {
                let f = args.remove(0);
                let g = args.remove(0);
                let a = args.remove(0);
                Some(app(app(f, a.clone()), app(g, a)))
            }
            Term::I(_) if !args.is_empty() => Some(args.remove(0)),
            Term::App(..) => Some(head.clone()),
            _ => None,
        };
        match fired {
            Some(new) => {
                let (h, pre) = new.spine();
                let mut all: Vec<Term> = pre.into_iter().cloned().collect();
                all.append(&mut args);
                head = h.clone();
                args = all;
            }
            None => break,
        }
    }
    args.iter().fold(head, |acc, a| app(acc, nf(a)))
}

/// `λx. t` by the clauses `[x]x = I`, `[x]M = K M` when `x ∉ FV(M)` and
/// `[x](M N) = S ([x]M) ([x]N)`. A unit-typed variable is replaced by `∗`.
pub fn bracket_abstract(t: &Term, x: &str, xty: &Ty) -> Result<Term, TypeError> {
    let tt = t.type_of()?;
    if *xty == Ty::Unit {
        return Ok(t.subst(x, xty, &Term::Star));
    }
    if tt == Ty::Unit {
        return Ok(Term::Star);
    }
    if !t.mentions(x, xty) {
        return Ok(app(Term::K(tt, xty.clone()), t.clone()));
    }
    match t {
        Term::Var(..) => Ok(Term::I(xty.clone())),
        Term::App(m, n) => {
            let tn = n.type_of()?;
            if tn == Ty::Unit {
                return bracket_abstract(m, x, xty);
            }
            let tm = m.type_of()?;
            let (b, c) = tm
                .split()
                .ok_or_else(|| TypeError::Mismatch { fun: tm.clone(), arg: tn.clone() })?;
            let s = Term::S(xty.clone(), b.clone(), c.clone());
            Ok(app(app(s, bracket_abstract(m, x, xty)?), bracket_abstract(n, x, xty)?))
        }
        _ => unreachable!("only variables and applications mention a variable"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{apps, parse_term};

    fn o() -> Ty {
        Ty::base("o")
    }

    fn c(n: &str) -> Term {
        Term::Const(n.into(), o())
    }

    #[test]
    fn k_and_s_equations() {
        let k = apps(Term::K(o(), o()), [c("a"), c("b")]);
        assert_eq!(normalize(&k).unwrap(), c("a"));
        let f = Term::K(o(), o());
        let g = Term::I(o());
        let s = apps(Term::S(o(), o(), o()), [f.clone(), g.clone(), c("a")]);
        let rhs = app(app(f, c("a")), app(g, c("a")));
        assert_eq!(normalize(&s).unwrap(), normalize(&rhs).unwrap());
    }

    #[test]
    fn identity_by_abstraction() {
        let id = bracket_abstract(&var("x", o()), "x", &o()).unwrap();
        assert_eq!(normalize(&app(id, c("b"))).unwrap(), c("b"));
        let skk = parse_term("S[o, o -> o, o] K[o, o -> o] K[o, o] @a:o").unwrap();
        assert_eq!(normalize(&skk).unwrap(), c("a"));
    }

    #[test]
    fn unit_rules() {
        assert_eq!(normalize(&app(c("a"), Term::Star)).unwrap(), c("a"));
        let k1 = Term::K(Ty::Unit, o());
        assert_eq!(normalize(&k1).unwrap(), Term::Star);
        assert_eq!(normalize(&app(Term::Star, c("a"))).unwrap(), Term::Star);
        let ka1 = app(Term::K(o(), Ty::Unit), c("a"));
        assert_eq!(normalize(&ka1).unwrap(), c("a"));
    }
}
