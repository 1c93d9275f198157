//! Finite groupoids, the walking-isomorphism interval, homotopies,
//! fundamental groupoids and squares.

pub mod construct;
pub mod enumerate;
pub mod error;
pub mod functor;
pub mod fundamental;
pub mod groupoid;
pub mod homotopy;
pub mod interval;
pub mod realizer;
pub mod squares;

pub use construct::{Caps, Exponential, Product};
pub use error::{Error, Result};
pub use functor::{EquivalenceData, GFunctor, NatIso};
pub use groupoid::{FinGroupoid, Grpd, Mor, Obj};
pub use homotopy::Homotopy;
pub use interval::{gpd_interval, IntervalData};
pub use realizer::{Gpd, RealizerCategory};
