//! Partitioned groupoidal assemblies over finite groupoids: realized
//! morphisms, weak exponentials, 2-cells, the path-category structure and
//! weak dependent products.

pub mod asm;
pub mod category;
pub mod depprod;
pub mod exp;
pub mod pathcat;
pub mod twocell;

pub use asm::{Asm, Assembly, ProductAsm, RealizedMorphism};
pub use category::{pgasm_interval, Pgasm};
pub use depprod::{dependent_product, DependentProduct};
pub use exp::{weak_exponential, WeakExp};
pub use twocell::TwoCell;
