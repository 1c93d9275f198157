//! Cells (A × 𝕀₁) × 𝕀₁ → B, their boundary squares and the filler that
//! inverts the boundary.

use gral_core::enumerate;
use gral_core::groupoid::{cyclic, terminal};
use gral_core::interval::gpd_interval;
use gral_core::squares::{boundary, gpd_fill};
use gral_core::{Gpd, RealizerCategory};

fn main() -> gral_core::Result<()> {
    let cat = Gpd::default();
    let iv = gpd_interval();
    let a = terminal();
    let b = cyclic(2, "z");
    let cyl = cat.product(&cat.product(&a, &iv.obj[1])?, &iv.obj[1])?;
    let cells = enumerate::functors(&cyl, &b, 1000)?;
    let mut round_trips = 0;
    for phi in &cells {
        let sq = boundary(&cat, &iv, &a, phi)?;
        assert!(sq.commutes(&cat, &iv)?);
        if gpd_fill(&cat, &iv, &sq)? == *phi {
            round_trips += 1;
        }
    }
    println!("{} cells into Z2, {} recovered from their boundary", cells.len(), round_trips);
    Ok(())
}
