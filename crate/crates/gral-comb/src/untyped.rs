//! The one-type algebra `U = U → U`: untyped SK terms with constants,
//! normalized under a step budget. Only terms that reach a normal form within
//! the budget belong to the normalizing fragment.

use std::collections::BTreeSet;
use std::fmt;

use crate::{CombError, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UTerm {
    S,
    K,
    I,
    Const(String),
    Var(String),
    App(Box<UTerm>, Box<UTerm>),
}

pub fn uapp(f: UTerm, a: UTerm) -> UTerm {
    UTerm::App(Box::new(f), Box::new(a))
}

pub fn uapps(f: UTerm, args: impl IntoIterator<Item = UTerm>) -> UTerm {
    args.into_iter().fold(f, uapp)
}

impl UTerm {
    pub fn size(&self) -> usize {
        match self {
            UTerm::App(f, a) => f.size() + a.size(),
            _ => 1,
        }
    }

    pub fn mentions(&self, x: &str) -> bool {
        match self {
            UTerm::Var(y) => y == x,
            UTerm::App(f, a) => f.mentions(x) || a.mentions(x),
            _ => false,
        }
    }

    pub fn subst(&self, x: &str, by: &UTerm) -> UTerm {
        match self {
            UTerm::Var(y) if y == x => by.clone(),
            UTerm::App(f, a) => uapp(f.subst(x, by), a.subst(x, by)),
            t => t.clone(),
        }
    }

    fn spine(&self) -> (&UTerm, Vec<&UTerm>) {
        let mut args = Vec::new();
        let mut h = self;
        while let UTerm::App(f, a) = h {
            args.push(&**a);
            h = f;
        }
        args.reverse();
        (h, args)
    }
}

impl fmt::Display for UTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UTerm::S => write!(f, "S"),
            UTerm::K => write!(f, "K"),
            UTerm::I => write!(f, "I"),
            UTerm::Const(n) => write!(f, "@{n}"),
            UTerm::Var(n) => write!(f, "{n}"),
            UTerm::App(g, a) => match **a {
                UTerm::App(..) => write!(f, "{g} ({a})"),
                _ => write!(f, "{g} {a}"),
            },
        }
    }
}

/// Normal form by leftmost-outermost reduction, failing after `fuel` steps.
pub fn normalize(t: &UTerm, fuel: usize) -> Result<UTerm> {
    let mut left = fuel;
    nf(t, &mut left).ok_or_else(|| CombError::Bound(format!("no normal form within {fuel} steps")))
}

fn nf(t: &UTerm, fuel: &mut usize) -> Option<UTerm> {
    let (h, args) = t.spine();
    let mut head = h.clone();
    let mut args: Vec<UTerm> = args.into_iter().cloned().collect();
    loop {
        let fired = match head {
            UTerm::K if args.len() >= 2 => {
                let a = args.remove(0);
                args.remove(0);
                a
            }
            UTerm::S if args.len() >= 3 => {
                let f = args.remove(0);
                let g = args.remove(0);
                let a = args.remove(0);
                uapp(uapp(f, a.clone()), uapp(g, a))
            }
            UTerm::I if !args.is_empty() => args.remove(0),
            _ => break,
        };
        *fuel = fuel.checked_sub(1)?;
        let (h, pre) = fired.spine();
        let mut all: Vec<UTerm> = pre.into_iter().cloned().collect();
        all.append(&mut args);
        head = h.clone();
        args = all;
    }
    args.iter().try_fold(head, |acc, a| Some(uapp(acc, nf(a, fuel)?)))
}

/// `[x]x = I`, `[x]M = K M` when `x ∉ FV(M)`, `[x](M N) = S ([x]M) ([x]N)`.
pub fn bracket(t: &UTerm, x: &str) -> UTerm {
    if !t.mentions(x) {
        return uapp(UTerm::K, t.clone());
    }
    match t {
        UTerm::Var(_) => UTerm::I,
        UTerm::App(m, n) => uapps(UTerm::S, [bracket(m, x), bracket(n, x)]),
        _ => unreachable!("only variables and applications mention a variable"),
    }
}

/// Closed normal forms of the terms of size at most `max_size` over `S`,
/// `K`, `I` and `consts` that normalize within `fuel` steps. Fails once more
/// than `cap` normal forms appear.
pub fn fragment(consts: &[&str], max_size: usize, fuel: usize, cap: usize) -> Result<Vec<UTerm>> {
    let mut seen: BTreeSet<UTerm> = BTreeSet::new();
    let mut by_size: Vec<Vec<UTerm>> = vec![Vec::new()];
    let atoms: Vec<UTerm> = [UTerm::S, UTerm::K, UTerm::I]
        .into_iter()
        .chain(consts.iter().map(|c| UTerm::Const(c.to_string())))
        .collect();
    let mut add = |t: UTerm, level: &mut Vec<UTerm>| -> Result<()> {
        if seen.insert(t.clone()) {
            if seen.len() > cap {
                return Err(CombError::Bound(format!("fragment exceeds {cap} normal forms")));
            }
            level.push(t);
        }
        Ok(())
    };
    let mut level = Vec::new();
    for a in atoms {
        add(a, &mut level)?;
    }
    by_size.push(level);
    for size in 2..=max_size {
        let mut level = Vec::new();
        for ls in 1..size {
            for f in &by_size[ls] {
                for a in &by_size[size - ls] {
                    if let Ok(n) = normalize(&uapp(f.clone(), a.clone()), fuel) {
                        add(n, &mut level)?;
                    }
                }
            }
        }
        by_size.push(level);
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> UTerm {
        UTerm::Const(n.into())
    }

    fn v(n: &str) -> UTerm {
        UTerm::Var(n.into())
    }

    #[test]
    fn k_and_s() {
        assert_eq!(normalize(&uapps(UTerm::K, [c("a"), c("b")]), 10).unwrap(), c("a"));
        let lhs = uapps(UTerm::S, [v("f"), v("g"), v("x")]);
        let rhs = uapp(uapp(v("f"), v("x")), uapp(v("g"), v("x")));
        assert_eq!(normalize(&lhs, 10).unwrap(), rhs);
    }

    #[test]
    fn omega_leaves_the_fragment() {
        let sii = uapps(UTerm::S, [UTerm::I, UTerm::I]);
        let omega = uapp(sii.clone(), sii);
        assert!(matches!(normalize(&omega, 1000), Err(CombError::Bound(_))));
    }

    #[test]
    fn self_application_is_typable_here() {
        let t = bracket(&uapp(v("x"), v("x")), "x");
        assert_eq!(normalize(&uapp(t, UTerm::I), 10).unwrap(), UTerm::I);
    }

    #[test]
    fn bracket_substitutes() {
        let body = uapps(v("x"), [c("a"), uapp(v("x"), c("b"))]);
        let lam = bracket(&body, "x");
        for arg in [UTerm::K, UTerm::I, uapp(UTerm::K, c("a"))] {
            let l = normalize(&uapp(lam.clone(), arg.clone()), 100).unwrap();
            let r = normalize(&body.subst("x", &arg), 100).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn fragment_is_closed_normal_forms() {
        let f = fragment(&["a"], 4, 50, 10_000).unwrap();
        assert!(f.contains(&UTerm::I) && f.contains(&c("a")));
        for t in &f {
            assert_eq!(&normalize(t, 50).unwrap(), t);
        }
    }
}
