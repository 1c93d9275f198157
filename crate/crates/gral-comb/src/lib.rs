//! Typed combinatory algebras, bracket abstraction, the unit augmentation,
//! computable-function categories, discrete assemblies and the untyped
//! one-type algebra.

pub mod asm;
pub mod poly;
pub mod rcat;
pub mod reduce;
pub mod tca;
pub mod term;
pub mod untyped;

pub use asm::{DiscreteAssembly, DiscreteMorphism};
pub use rcat::{Computable, RCat};
pub use reduce::{bracket_abstract, normalize};
pub use tca::{EquationCheck, Fragment, Tca};
pub use term::{app, apps, parse_term, parse_type, var, ParseError, Term, Ty, TypeError};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CombError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, CombError>;
