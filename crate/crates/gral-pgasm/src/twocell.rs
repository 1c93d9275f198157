//! 2-cells `X × 𝐈₁ → Y` between realized morphisms and their compositions.

use gral_core::construct::{natiso_as_functor, natiso_from_functor};
use gral_core::groupoid::Obj;
use gral_core::{Caps, Error, GFunctor, NatIso, Result};

use crate::asm::{find_realizer, product, Asm, Assembly, ProductAsm, RealizedMorphism};

/// A realized natural isomorphism `src ⇒ tgt`, stored as a realized
/// morphism out of the cylinder `X × 𝐈₁`.
#[derive(Clone, Debug)]
pub struct TwoCell {
    pub src: RealizedMorphism,
    pub tgt: RealizedMorphism,
    pub cyl: ProductAsm,
    pub cell: RealizedMorphism,
}

impl PartialEq for TwoCell {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.tgt == other.tgt && self.cell == other.cell
    }
}

impl Eq for TwoCell {}

pub fn cylinder(x: &Asm, caps: &Caps) -> Result<ProductAsm> {
    product(x, &Assembly::interval(), caps)
}

/// Build the cell with body `ψ`, realizer `e` and components of `ε` given
/// per endpoint.
pub(crate) fn assemble(
    src: &RealizedMorphism,
    tgt: &RealizedMorphism,
    cyl: ProductAsm,
    psi: &NatIso,
    e: GFunctor,
    eps: impl Fn(Obj, bool) -> gral_core::groupoid::Mor,
) -> Result<TwoCell> {
    let body = natiso_as_functor(psi).retyped(&cyl.base.grpd, &tgt.tgt.base)?;
    let lhs = e.after(&cyl.asm.rfun)?;
    let rhs = tgt.tgt.rfun.after(&body)?;
    let eps = NatIso::from_fn(&lhs, &rhs, |o| {
        let (x, s) = cyl.base.split_obj(o);
        eps(x, s.idx() == 1)
    })?;
    let cell = RealizedMorphism::new(&cyl.asm, &tgt.tgt, body, e, eps)?;
    Ok(TwoCell {
        src: src.clone(),
        tgt: tgt.clone(),
        cyl,
        cell,
    })
}

impl TwoCell {
    /// Wrap a realized morphism out of `X × 𝐈₁`.
    pub fn new(cyl: ProductAsm, cell: RealizedMorphism, src: RealizedMorphism, tgt: RealizedMorphism) -> Result<TwoCell> {
        if !cell.src.same(&cyl.asm) || !cell.tgt.same(&src.tgt) {
            return Err(Error::Mismatch("2-cell is not a map out of the cylinder".into()));
        }
        let t = TwoCell { src, tgt, cyl, cell };
        let n = t.natiso()?;
        if *n.src() != t.src.fun || *n.tgt() != t.tgt.fun {
            return Err(Error::Mismatch("2-cell boundary differs from the stated 1-cells".into()));
        }
        Ok(t)
    }

    /// The least realizer of `ψ: F ⇒ G` as a 2-cell, if any.
    pub fn realize(src: &RealizedMorphism, tgt: &RealizedMorphism, psi: &NatIso, caps: &Caps) -> Result<Option<TwoCell>> {
        let cyl = cylinder(&src.src, caps)?;
        let body = natiso_as_functor(psi).retyped(&cyl.base.grpd, &tgt.tgt.base)?;
        Ok(find_realizer(&cyl.asm, &tgt.tgt, &body, caps)?.map(|cell| TwoCell {
            src: src.clone(),
            tgt: tgt.clone(),
            cyl,
            cell,
        }))
    }

    /// Realize `ψ: F ⇒ G` by `(e^F π₁, ε)` with `ε_{(x,0)} = ε^F_x` and
    /// `ε_{(x,1)} = ‖ψ_x‖ε^F_x`. Every natural isomorphism between realized
    /// morphisms is realized this way.
    pub fn canonical(src: &RealizedMorphism, tgt: &RealizedMorphism, psi: &NatIso, caps: &Caps) -> Result<TwoCell> {
        if *psi.src() != src.fun || *psi.tgt() != tgt.fun {
            return Err(Error::Mismatch("natural isomorphism between other functors".into()));
        }
        let cyl = cylinder(&src.src, caps)?;
        let e = src.e.after(&cyl.real.fst())?;
        let y = &tgt.tgt;
        assemble(src, tgt, cyl, psi, e, |x, one| {
            let base = src.eps.at(x);
            if one {
                y.rtype.compose(y.rfun.mor(psi.at(x)), base)
            } else {
                base
            }
        })
    }

    pub fn natiso(&self) -> Result<NatIso> {
        natiso_from_functor(&self.cell.fun, &self.cyl.base)
    }

    pub fn is_valid(&self) -> bool {
        self.cell.is_valid()
            && self
                .natiso()
                .map(|n| *n.src() == self.src.fun && *n.tgt() == self.tgt.fun)
                .unwrap_or(false)
    }

    /// `ε` at `(x, s)`.
    fn eps_at(&self, x: Obj, s: u32) -> gral_core::groupoid::Mor {
        self.cell.eps.at(self.cyl.base.obj(x, Obj(s)))
    }

    /// `id_F`, realized by `(e^F π₁, ε^F)`.
    pub fn identity(f: &RealizedMorphism, caps: &Caps) -> Result<TwoCell> {
        let cyl = cylinder(&f.src, caps)?;
        let e = f.e.after(&cyl.real.fst())?;
        assemble(f, f, cyl, &NatIso::identity(&f.fun), e, |x, _| f.eps.at(x))
    }

    /// `φ⁻¹ = φ∘(X × σ)`, realized by `(e^φ∘(A × σ), ε^φ` with endpoints swapped`)`.
    pub fn inverse(&self) -> Result<TwoCell> {
        let sig = sigma(&self.cyl.real.right);
        let a = &self.cyl.real.left;
        let e = self
            .cell
            .e
            .after(&self.cyl.real.times(&self.cyl.real, &GFunctor::identity(a), &sig)?)?;
        let psi = self.natiso()?.inverse();
        assemble(&self.tgt, &self.src, self.cyl.clone(), &psi, e, |x, one| {
            self.eps_at(x, if one { 0 } else { 1 })
        })
    }

    /// `ψφ` for `ψ = self`, realized by `e^φ` with `ε_{(x,1)} = ‖ψ_x‖ε^φ_{(x,1)}`.
    pub fn vertical(&self, phi: &TwoCell) -> Result<TwoCell> {
        if self.src != phi.tgt {
            return Err(Error::Mismatch("vertical composite: boundaries differ".into()));
        }
        let psi = self.natiso()?;
        let comp = psi.after(&phi.natiso()?)?;
        let y = &self.tgt.tgt;
        assemble(&phi.src, &self.tgt, phi.cyl.clone(), &comp, phi.cell.e.clone(), |x, one| {
            if one {
                y.rtype.compose(y.rfun.mor(psi.at(x)), phi.eps_at(x, 1))
            } else {
                phi.eps_at(x, 0)
            }
        })
    }

    /// `ψ ∗ φ` for `ψ = self: H ⇒ K` and `φ: F ⇒ G`, realized by
    /// `e^H e^φ` using the realizer carried by `H`.
    pub fn horizontal(&self, phi: &TwoCell) -> Result<TwoCell> {
        if !phi.tgt.tgt.same(&self.src.src) {
            return Err(Error::Mismatch("horizontal composite: objects misaligned".into()));
        }
        let h = &self.src;
        let psi = self.natiso()?;
        let phin = phi.natiso()?;
        let z = &self.tgt.tgt;
        let src = h.after(&phi.src)?;
        let tgt = self.tgt.after(&phi.tgt)?;
        let comp = NatIso::from_fn(&src.fun, &tgt.fun, |x| {
            z.base
                .compose(psi.at(phi.tgt.fun.ob(x)), h.fun.mor(phin.at(x)))
        })?;
        let e = h.e.after(&phi.cell.e)?;
        let c = &z.rtype;
        assemble(&src, &tgt, phi.cyl.clone(), &comp, e, |x, one| {
            let s = if one { 1 } else { 0 };
            let fx = if one { phi.tgt.fun.ob(x) } else { phi.src.fun.ob(x) };
            let m = c.compose(h.eps.at(fx), h.e.mor(phi.eps_at(x, s)));
            if one {
                c.compose(z.rfun.mor(psi.at(fx)), m)
            } else {
                m
            }
        })
    }
}

/// `σ` on the walking isomorphism.
fn sigma(i1: &gral_core::Grpd) -> GFunctor {
    GFunctor::from_fn(
        i1,
        i1,
        |o| Obj(1 - o.0),
        |m| i1.hom(Obj(1 - i1.src(m).0), Obj(1 - i1.tgt(m).0))[0],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use gral_core::enumerate;
    use gral_core::groupoid::{cyclic, walking_iso};

    fn cells() -> Vec<TwoCell> {
        let caps = Caps::default();
        let x = Assembly::of(&GFunctor::identity(&cyclic(2, "a")));
        let y = Assembly::of(&GFunctor::identity(&walking_iso()));
        let maps: Vec<RealizedMorphism> = enumerate::functors(&x.base, &y.base, 100)
            .unwrap()
            .iter()
            .filter_map(|f| find_realizer(&x, &y, f, &caps).unwrap())
            .collect();
        let mut out = Vec::new();
        for f in &maps {
            for g in &maps {
                for n in enumerate::natisos(&f.fun, &g.fun, 100).unwrap() {
                    out.push(TwoCell::realize(f, g, &n, &caps).unwrap().unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn identity_inverse_and_vertical() {
        let caps = Caps::default();
        let cs = cells();
        assert!(!cs.is_empty());
        for c in &cs {
            assert!(c.is_valid());
            let id = TwoCell::identity(&c.tgt, &caps).unwrap();
            assert_eq!(id.vertical(c).unwrap().natiso().unwrap(), c.natiso().unwrap());
            let inv = c.inverse().unwrap();
            let back = inv.vertical(c).unwrap();
            assert_eq!(back.natiso().unwrap(), NatIso::identity(&c.src.fun));
        }
    }

    #[test]
    fn horizontal_composite_validates() {
        let caps = Caps::default();
        let cs = cells();
        let y = cs[0].tgt.tgt.clone();
        let z = Assembly::of(&GFunctor::identity(&cyclic(2, "b")));
        let h = find_realizer(&y, &z, &GFunctor::constant(&y.base, &z.base, Obj(0)), &caps)
            .unwrap()
            .unwrap();
        let idh = TwoCell::identity(&h, &caps).unwrap();
        for c in &cs {
            let hc = idh.horizontal(c).unwrap();
            assert!(hc.is_valid());
        }
    }
}
