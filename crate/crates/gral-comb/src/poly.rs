//! Random typed polynomials, driven by a choice function so any source of
//! randomness can be used.

use crate::reduce::{bracket_abstract, normalize};
use crate::tca::Tca;
use crate::term::{app, Term, Ty};
use crate::Result;

/// `choose(n)` must return a number below `n`.
pub type Choose<'a> = dyn FnMut(usize) -> usize + 'a;

/// A closed term of type `ty` built from constants, `∗` and combinators.
pub fn leaf(tca: &Tca, ty: &Ty, choose: &mut Choose) -> Term {
    match ty {
        Ty::Unit => Term::Star,
        Ty::Base(_) => {
            let cs: Vec<_> = tca.constants.iter().filter(|(_, t)| t == ty).collect();
            if cs.is_empty() {
                panic!("no constant of type {ty}");
            }
            let (n, t) = cs[choose(cs.len())];
            Term::Const(n.clone(), t.clone())
        }
        Ty::Arrow(a, b) => {
            if a == b && choose(2) == 0 {
                Term::I((**a).clone())
            } else {
                app(Term::K((**b).clone(), (**a).clone()), leaf(tca, b, choose))
            }
        }
    }
}

/// A term of type `ty` with free variables among `vars`. Arguments of
/// applications range over `arg_types`.
pub fn polynomial(
    tca: &Tca,
    ty: &Ty,
    depth: usize,
    vars: &[(String, Ty)],
    arg_types: &[Ty],
    choose: &mut Choose,
) -> Term {
    let here: Vec<_> = vars.iter().filter(|(_, t)| t == ty).collect();
    if depth == 0 || arg_types.is_empty() || choose(3) == 0 {
        if !here.is_empty() && choose(3) != 0 {
            let (n, t) = here[choose(here.len())];
            return Term::Var(n.clone(), t.clone());
        }
        return leaf(tca, ty, choose);
    }
    let b = arg_types[choose(arg_types.len())].clone();
    let f = polynomial(tca, &Ty::arrow(b.clone(), ty.clone()), depth - 1, vars, arg_types, choose);
    let a = polynomial(tca, &b, depth - 1, vars, arg_types, choose);
    app(f, a)
}

/// One instance of `([x]t) a = t[a/x]`.
#[derive(Clone, Debug)]
pub struct BracketCase {
    pub body: Term,
    pub abstraction: Term,
    pub typed: bool,
    pub closed_in_x: bool,
    pub beta: bool,
}

impl BracketCase {
    pub fn holds(&self) -> bool {
        self.typed && self.closed_in_x && self.beta
    }
}

pub fn check_bracket(tca: &Tca, t: &Term, x: &str, xty: &Ty, a: &Term) -> Result<BracketCase> {
    let tt = tca.check(t)?;
    let lam = bracket_abstract(t, x, xty)?;
    let typed = tca.check(&lam).ok() == Some(Ty::arrow(xty.clone(), tt));
    let closed_in_x = !lam.mentions(x, xty);
    let beta = normalize(&app(lam.clone(), a.clone()))? == normalize(&t.subst(x, xty, a))?;
    Ok(BracketCase {
        body: t.clone(),
        abstraction: lam,
        typed,
        closed_in_x,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_terms_have_the_requested_type() {
        let tca = Tca::standard().unit_augmentation();
        let o = Ty::base("o");
        let args = [o.clone(), Ty::arrow(o.clone(), o.clone()), Ty::Unit];
        let vars = [("x".to_string(), o.clone()), ("u".to_string(), Ty::Unit)];
        let mut s = 7usize;
        let mut choose = |n: usize| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) % n
        };
        for _ in 0..50 {
            let t = polynomial(&tca, &o, 4, &vars, &args, &mut choose);
            assert_eq!(tca.check(&t).unwrap(), o);
            let c = check_bracket(&tca, &t, "x", &o, &Term::Const("b".into(), o.clone())).unwrap();
            assert!(c.holds(), "{t}");
        }
    }
}
