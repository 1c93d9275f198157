//! Types, typed SK terms with constants and variables, and their syntax.
//!
//! ```text
//! type  ::= atom ("->" type)?
//! atom  ::= ident | "1" | "(" type ")"
//! term  ::= prim+                         application, left associative
//! prim  ::= "K" "[" type "," type "]"
//!         | "S" "[" type "," type "," type "]"
//!         | "I" "[" type "]"
//!         | "STAR"
//!         | "@" ident ":" atom            constant
//!         | ident ":" atom                variable
//!         | "(" term ")"
//! ```

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A simple type. Arrows built with [`Ty::arrow`] are kept in unit-normal
/// form: `1 → A = A` and `A → 1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    Base(String),
    Unit,
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    pub fn base(name: &str) -> Ty {
        Ty::Base(name.to_string())
    }

    pub fn arrow(a: Ty, b: Ty) -> Ty {
        match (a, b) {
            (Ty::Unit, b) => b,
            (_, Ty::Unit) => Ty::Unit,
            (a, b) => Ty::Arrow(Box::new(a), Box::new(b)),
        }
    }

    /// `a₁ → … → aₙ → r`.
    pub fn arrows(args: &[Ty], r: Ty) -> Ty {
        args.iter().rev().fold(r, |acc, a| Ty::arrow(a.clone(), acc))
    }

    pub fn split(&self) -> Option<(&Ty, &Ty)> {
        match self {
            Ty::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn mentions_unit(&self) -> bool {
        match self {
            Ty::Unit => true,
            Ty::Base(_) => false,
            Ty::Arrow(a, b) => a.mentions_unit() || b.mentions_unit(),
        }
    }

    pub fn bases(&self, out: &mut BTreeSet<String>) {
        match self {
            Ty::Base(n) => {
                out.insert(n.clone());
            }
            Ty::Unit => {}
            Ty::Arrow(a, b) => {
                a.bases(out);
                b.bases(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Ty::Arrow(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Base(n) => write!(f, "{n}"),
            Ty::Unit => write!(f, "1"),
            Ty::Arrow(a, b) if a.split().is_some() => write!(f, "({a}) -> {b}"),
            Ty::Arrow(a, b) => write!(f, "{a} -> {b}"),
        }
    }
}

/// An applicative term. Closed terms without variables are elements of the
/// algebra; terms with variables are polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// `k_{A,B}: A → B → A`.
    K(Ty, Ty),
    /// `s_{A,B,C}: (A → B → C) → (A → B) → A → C`.
    S(Ty, Ty, Ty),
    /// `i_A: A → A`.
    I(Ty),
    /// The element of the unit type.
    Star,
    Const(String, Ty),
    Var(String, Ty),
    App(Box<Term>, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("cannot apply a term of type {fun} to an argument of type {arg}")]
    Mismatch { fun: Ty, arg: Ty },
    #[error("the unit type is not available")]
    NoUnit,
    #[error("unknown base type {0}")]
    UnknownBase(String),
    #[error("unknown constant {0}")]
    UnknownConstant(String),
    #[error("variable {0} is used at two types")]
    VariableClash(String),
}

pub fn app(f: Term, a: Term) -> Term {
    Term::App(Box::new(f), Box::new(a))
}

/// `f a₁ … aₙ`.
pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
    args.into_iter().fold(f, app)
}

pub fn var(name: &str, ty: Ty) -> Term {
    Term::Var(name.to_string(), ty)
}

impl Term {
    pub fn type_of(&self) -> Result<Ty, TypeError> {
        Ok(match self {
            Term::K(a, b) => Ty::arrows(&[a.clone(), b.clone()], a.clone()),
            Term::S(a, b, c) => Ty::arrows(
                &[
                    Ty::arrows(&[a.clone(), b.clone()], c.clone()),
                    Ty::arrow(a.clone(), b.clone()),
                    a.clone(),
                ],
                c.clone(),
            ),
            Term::I(a) => Ty::arrow(a.clone(), a.clone()),
            Term::Star => Ty::Unit,
            Term::Const(_, t) | Term::Var(_, t) => t.clone(),
            Term::App(f, a) => {
                let (tf, ta) = (f.type_of()?, a.type_of()?);
                if ta == Ty::Unit || tf == Ty::Unit {
                    tf
                } else {
                    match tf.split() {
                        Some((dom, cod)) if *dom == ta => cod.clone(),
                        _ => return Err(TypeError::Mismatch { fun: tf, arg: ta }),
                    }
                }
            }
        })
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<(String, Ty)> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<(String, Ty)>) {
        match self {
            Term::Var(n, t) => {
                out.insert((n.clone(), t.clone()));
            }
            Term::App(f, a) => {
                f.collect_vars(out);
                a.collect_vars(out);
            }
            _ => {}
        }
    }

    pub fn mentions(&self, x: &str, ty: &Ty) -> bool {
        match self {
            Term::Var(n, t) => n == x && t == ty,
            Term::App(f, a) => f.mentions(x, ty) || a.mentions(x, ty),
            _ => false,
        }
    }

    /// `t[a/x]`.
    pub fn subst(&self, x: &str, ty: &Ty, a: &Term) -> Term {
        match self {
            Term::Var(n, t) if n == x && t == ty => a.clone(),
            Term::App(f, b) => app(f.subst(x, ty, a), b.subst(x, ty, a)),
            other => other.clone(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::App(f, a) => f.size() + a.size(),
            _ => 1,
        }
    }

    /// Head and arguments of the application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(a.as_ref());
            t = f;
        }
        args.reverse();
        (t, args)
    }

    /// Every type mentioned by the term.
    pub fn types(&self, out: &mut BTreeSet<Ty>) {
        match self {
            Term::K(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Term::S(a, b, c) => {
                out.insert(a.clone());
                out.insert(b.clone());
                out.insert(c.clone());
            }
            Term::I(a) | Term::Const(_, a) | Term::Var(_, a) => {
                out.insert(a.clone());
            }
            Term::Star => {
                out.insert(Ty::Unit);
            }
            Term::App(f, a) => {
                f.types(out);
                a.types(out);
            }
        }
    }
}

fn atom_ty(t: &Ty) -> String {
    match t {
        Ty::Arrow(..) => format!("({t})"),
        _ => t.to_string(),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::K(a, b) => write!(f, "K[{a}, {b}]"),
            Term::S(a, b, c) => write!(f, "S[{a}, {b}, {c}]"),
            Term::I(a) => write!(f, "I[{a}]"),
            Term::Star => write!(f, "STAR"),
            Term::Const(n, t) => write!(f, "@{n}:{}", atom_ty(t)),
            Term::Var(n, t) => write!(f, "{n}:{}", atom_ty(t)),
            Term::App(g, a) => {
                write!(f, "{g} ")?;
                if matches!(**a, Term::App(..)) {
                    write!(f, "({a})")
                } else {
                    write!(f, "{a}")
                }
            }
        }
    }
}

/// A syntax error with its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            for _ in s.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
            self.bump();
        }
        if self.pos == start {
            return self.err("expected an identifier");
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn ty(&mut self) -> Result<Ty, ParseError> {
        let a = self.atom()?;
        if self.eat("->") {
            let b = self.ty()?;
            Ok(Ty::arrow(a, b))
        } else {
            Ok(a)
        }
    }

    fn atom(&mut self) -> Result<Ty, ParseError> {
        if self.eat("(") {
            let t = self.ty()?;
            self.expect(")")?;
            return Ok(t);
        }
        if self.eat("1") {
            return Ok(Ty::Unit);
        }
        Ok(Ty::Base(self.ident()?))
    }

    fn starts_prim(&mut self) -> bool {
        self.skip_ws();
        self.peek()
            .is_some_and(|c| c == '(' || c == '@' || c.is_alphanumeric() || c == '_')
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.prim()?;
        while self.starts_prim() {
            let a = self.prim()?;
            t = app(t, a);
        }
        Ok(t)
    }

    fn prim(&mut self) -> Result<Term, ParseError> {
        if self.eat("(") {
            let t = self.term()?;
            self.expect(")")?;
            return Ok(t);
        }
        if self.eat("@") {
            let n = self.ident()?;
            self.expect(":")?;
            return Ok(Term::Const(n, self.atom()?));
        }
        let (line, col) = (self.line, self.col);
        let n = self.ident()?;
        let bracketed = |p: &mut Self, k: usize| -> Result<Vec<Ty>, ParseError> {
            p.expect("[")?;
            let mut out = vec![p.ty()?];
            for _ in 1..k {
                p.expect(",")?;
                out.push(p.ty()?);
            }
            p.expect("]")?;
            Ok(out)
        };
        match n.as_str() {
            "K" => {
                let t = bracketed(self, 2)?;
                Ok(Term::K(t[0].clone(), t[1].clone()))
            }
            "S" => {
                let t = bracketed(self, 3)?;
                Ok(Term::S(t[0].clone(), t[1].clone(), t[2].clone()))
            }
            "I" => Ok(Term::I(bracketed(self, 1)?.remove(0))),
            "STAR" => Ok(Term::Star),
            _ => {
                if !self.eat(":") {
                    return Err(ParseError {
                        line,
                        col,
                        msg: format!("variable `{n}` needs a type annotation"),
                    });
                }
                Ok(Term::Var(n, self.atom()?))
            }
        }
    }
}

pub fn parse_type(src: &str) -> Result<Ty, ParseError> {
    let mut p = Parser::new(src);
    let t = p.ty()?;
    p.skip_ws();
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(t)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src);
    let t = p.term()?;
    p.skip_ws();
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_laws_on_types() {
        let o = Ty::base("o");
        assert_eq!(Ty::arrow(Ty::Unit, o.clone()), o);
        assert_eq!(Ty::arrow(o.clone(), Ty::Unit), Ty::Unit);
        assert_eq!(parse_type("(o -> o) -> o").unwrap().to_string(), "(o -> o) -> o");
    }

    #[test]
    fn typing_of_combinators() {
        let o = Ty::base("o");
        let k = Term::K(o.clone(), o.clone());
        let a = Term::Const("a".into(), o.clone());
        assert_eq!(apps(k, [a.clone(), a.clone()]).type_of().unwrap(), o);
        let bad = app(a.clone(), a);
        assert!(matches!(bad.type_of(), Err(TypeError::Mismatch { .. })));
    }

    #[test]
    fn syntax_round_trip_and_positions() {
        let src = "S[o, o -> o, o] (K[o, o] x:o) I[o -> o] @a:o";
        let t = parse_term(src).unwrap();
        assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        let e = parse_term("K[o, o]\n  y").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
    }
}
