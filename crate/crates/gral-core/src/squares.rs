//! Squares of homotopies and the cells `(A × 𝕀₁) × 𝕀₁ → B` filling them.
//!
//! A cell `φ` has coordinates `((a, s), t)`. Its boundary is
//! `top = φ(−, −, 0)`, `bottom = φ(−, −, 1)`, `left = φ(−, 0, −)` and
//! `right = φ(−, 1, −)`.

use crate::construct::product_capped;
use crate::error::{Error, Result};
use crate::functor::GFunctor;
use crate::groupoid::{same_groupoid, walking_iso, Obj};
use crate::homotopy::{section, vcomp, Homotopy};
use crate::interval::IntervalData;
use crate::realizer::{Gpd, RealizerCategory};

#[derive(Clone, Debug)]
pub struct Square<C: RealizerCategory> {
    pub top: Homotopy<C>,
    pub bottom: Homotopy<C>,
    pub left: Homotopy<C>,
    pub right: Homotopy<C>,
}

impl<C: RealizerCategory> PartialEq for Square<C> {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top
            && self.bottom == other.bottom
            && self.left == other.left
            && self.right == other.right
    }
}

impl<C: RealizerCategory> Eq for Square<C> {}

impl<C: RealizerCategory> Square<C> {
    /// Corners agree and every edge has the same base.
    pub fn is_well_formed(&self, cat: &C) -> bool {
        let base = &self.top.base;
        [&self.bottom, &self.left, &self.right]
            .iter()
            .all(|h| cat.ob_eq(&h.base, base))
            && self.top.lhs == self.left.lhs
            && self.top.rhs == self.right.lhs
            && self.bottom.lhs == self.left.rhs
            && self.bottom.rhs == self.right.rhs
    }

    /// `right ∘ top = bottom ∘ left`.
    pub fn commutes(&self, cat: &C, iv: &IntervalData<C>) -> Result<bool> {
        if !self.is_well_formed(cat) {
            return Ok(false);
        }
        Ok(vcomp(cat, iv, &self.right, &self.top)? == vcomp(cat, iv, &self.bottom, &self.left)?)
    }

    /// Reflect along the diagonal.
    pub fn transpose(&self) -> Square<C> {
        Square {
            top: self.left.clone(),
            bottom: self.right.clone(),
            left: self.top.clone(),
            right: self.bottom.clone(),
        }
    }

    /// `self` above `below`.
    pub fn stack_vertical(&self, cat: &C, iv: &IntervalData<C>, below: &Square<C>) -> Result<Square<C>> {
        if self.bottom != below.top {
            return Err(Error::Mismatch("stacked squares do not share an edge".into()));
        }
        Ok(Square {
            top: self.top.clone(),
            bottom: below.bottom.clone(),
            left: vcomp(cat, iv, &below.left, &self.left)?,
            right: vcomp(cat, iv, &below.right, &self.right)?,
        })
    }

    /// `self` to the left of `beside`.
    pub fn stack_horizontal(
        &self,
        cat: &C,
        iv: &IntervalData<C>,
        beside: &Square<C>,
    ) -> Result<Square<C>> {
        Ok(self
            .transpose()
            .stack_vertical(cat, iv, &beside.transpose())?
            .transpose())
    }
}

/// `A × 𝕀₁`.
fn cylinder<C: RealizerCategory>(cat: &C, iv: &IntervalData<C>, a: &C::Ob) -> Result<C::Ob> {
    cat.product(a, &iv.obj[1])
}

/// `∂φ` for a cell `φ: (A × 𝕀₁) × 𝕀₁ → B`.
pub fn boundary<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    a: &C::Ob,
    phi: &C::Map,
) -> Result<Square<C>> {
    let ai = cylinder(cat, iv, a)?;
    let id1 = cat.identity(&iv.obj[1]);
    let horizontal = |p: &C::Map| -> Result<Homotopy<C>> {
        let body = cat.compose(phi, &section(cat, &ai, p)?)?;
        Homotopy::new(cat, iv, a, body)
    };
    let vertical = |p: &C::Map| -> Result<Homotopy<C>> {
        let side = cat.times(&section(cat, a, p)?, &id1)?;
        Homotopy::new(cat, iv, a, cat.compose(phi, &side)?)
    };
    Ok(Square {
        top: horizontal(&iv.zero)?,
        bottom: horizontal(&iv.one)?,
        left: vertical(&iv.zero)?,
        right: vertical(&iv.one)?,
    })
}

/// `((a, s), t) ↦ ((a, t), s)`.
pub fn transpose_coordinates<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    a: &C::Ob,
) -> Result<C::Map> {
    let i1 = &iv.obj[1];
    let ai = cylinder(cat, iv, a)?;
    let outer = cat.fst(&ai, i1)?;
    let pa = cat.compose(&cat.fst(a, i1)?, &outer)?;
    let ps = cat.compose(&cat.snd(a, i1)?, &outer)?;
    let pt = cat.snd(&ai, i1)?;
    cat.pair(&cat.pair(&pa, &pt)?, &ps)
}

pub fn transpose_cell<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    a: &C::Ob,
    phi: &C::Map,
) -> Result<C::Map> {
    cat.compose(phi, &transpose_coordinates(cat, iv, a)?)
}

/// `ψ` below `φ`: the composite homotopy on base `A × 𝕀₁`.
pub fn cell_vertical<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    a: &C::Ob,
    lower: &C::Map,
    upper: &C::Map,
) -> Result<C::Map> {
    let ai = cylinder(cat, iv, a)?;
    let h1 = Homotopy::new(cat, iv, &ai, upper.clone())?;
    let h2 = Homotopy::new(cat, iv, &ai, lower.clone())?;
    Ok(vcomp(cat, iv, &h2, &h1)?.body)
}

/// `ψ` to the right of `φ`.
pub fn cell_horizontal<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    a: &C::Ob,
    right: &C::Map,
    left: &C::Map,
) -> Result<C::Map> {
    let lt = transpose_cell(cat, iv, a, left)?;
    let rt = transpose_cell(cat, iv, a, right)?;
    let v = cell_vertical(cat, iv, a, &rt, &lt)?;
    transpose_cell(cat, iv, a, &v)
}

/// `∂⁻¹` in finite groupoids: the unique cell with the given boundary.
pub fn gpd_fill(cat: &Gpd, iv: &IntervalData<Gpd>, sq: &Square<Gpd>) -> Result<GFunctor> {
    if !sq.commutes(cat, iv)? {
        return Err(Error::Precondition("square does not commute".into()));
    }
    let i1 = walking_iso();
    let a = &sq.top.base;
    let b = sq.top.target(cat);
    let ai = product_capped(a, &i1, &cat.caps)?;
    let aii = product_capped(&ai.grpd, &i1, &cat.caps)?;
    for h in [&sq.top, &sq.bottom, &sq.left, &sq.right] {
        if !same_groupoid(h.body.dom(), &ai.grpd) || !same_groupoid(h.body.cod(), &b) {
            return Err(Error::Mismatch("edge is not a homotopy A × 𝕀₁ → B".into()));
        }
    }
    let edge_h = |t: Obj| if t.idx() == 0 { &sq.top } else { &sq.bottom };
    let edge_v = |s: Obj| if s.idx() == 0 { &sq.left } else { &sq.right };
    let corner = |x: Obj, s: Obj, t: Obj| edge_v(s).body.ob(ai.obj(x, t));
    let cell = GFunctor::from_fn(
        &aii.grpd,
        &b,
        |o| {
            let (xs, t) = aii.split_obj(o);
            let (x, s) = ai.split_obj(xs);
            corner(x, s, t)
        },
        |m| {
            let (pu, v) = aii.split_mor(m);
            let t = i1.src(v);
            let (p, u) = ai.split_mor(pu);
            let x1 = a.tgt(p);
            let s1 = i1.tgt(u);
            let across = edge_h(t).body.mor(pu);
            let down = edge_v(s1).body.mor(ai.mor(a.id(x1), v));
            b.compose(down, across)
        },
    );
    if !cell.is_valid() {
        return Err(Error::Structural("filler is not a functor".into()));
    }
    Ok(cell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::product;
    use crate::enumerate;
    use crate::groupoid::cyclic;
    use crate::interval::gpd_interval;

    #[test]
    fn fill_inverts_boundary() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let a = cyclic(2, "o");
        let b = walking_iso();
        let ai = product(&a, &walking_iso());
        let aii = product(&ai.grpd, &walking_iso());
        let cells = enumerate::functors(&aii.grpd, &b, 10_000).unwrap();
        assert!(!cells.is_empty());
        for phi in cells.iter().take(40) {
            let sq = boundary(&cat, &iv, &a, phi).unwrap();
            assert!(sq.commutes(&cat, &iv).unwrap());
            assert_eq!(&gpd_fill(&cat, &iv, &sq).unwrap(), phi);
        }
    }

    #[test]
    fn boundary_is_double_functorial() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let a = crate::groupoid::terminal();
        let b = cyclic(2, "o");
        let ai = product(&a, &walking_iso());
        let aii = product(&ai.grpd, &walking_iso());
        let cells = enumerate::functors(&aii.grpd, &b, 10_000).unwrap();
        for upper in &cells {
            let su = boundary(&cat, &iv, &a, upper).unwrap();
            for lower in &cells {
                let sl = boundary(&cat, &iv, &a, lower).unwrap();
                if su.bottom == sl.top {
                    let v = cell_vertical(&cat, &iv, &a, lower, upper).unwrap();
                    let expect = su.stack_vertical(&cat, &iv, &sl).unwrap();
                    assert_eq!(boundary(&cat, &iv, &a, &v).unwrap(), expect);
                }
                if su.right == sl.left {
                    let h = cell_horizontal(&cat, &iv, &a, lower, upper).unwrap();
                    let expect = su.stack_horizontal(&cat, &iv, &sl).unwrap();
                    assert_eq!(boundary(&cat, &iv, &a, &h).unwrap(), expect);
                }
            }
        }
    }
}
