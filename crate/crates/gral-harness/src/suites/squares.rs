use gral_core::construct::{natiso_as_functor, product_capped};
use gral_core::groupoid::walking_iso;
use gral_core::squares::{boundary, cell_horizontal, cell_vertical, gpd_fill, Square};
use gral_core::{enumerate, gpd_interval, GFunctor, Gpd, Grpd, Homotopy, NatIso};

use super::Witness;
use crate::gen::Gen;
use crate::report::{Check, SuiteConfig, Tally};

const SUITE: &str = "squares";

/// `(A × 𝕀₁) × 𝕀₁`.
fn double_cylinder(a: &Grpd, cfg: &SuiteConfig) -> Option<Grpd> {
    let ai = product_capped(a, &walking_iso(), &cfg.caps()).ok()?;
    Some(product_capped(&ai.grpd, &walking_iso(), &cfg.caps()).ok()?.grpd)
}

fn as_homotopy(cat: &Gpd, n: &NatIso) -> Option<Homotopy<Gpd>> {
    let iv = gpd_interval();
    let cyl = product_capped(n.dom(), &walking_iso(), &cat.caps).ok()?;
    let body = natiso_as_functor(n).retyped(&cyl.grpd, n.cod()).ok()?;
    Homotopy::new(cat, &iv, n.dom(), body).ok()
}

/// A commuting square built from three random natural isomorphisms; the
/// bottom edge is forced.
fn commuting_square(g: &mut Gen, cat: &Gpd) -> Option<(Grpd, Grpd, Square<Gpd>)> {
    let (a, b) = (g.groupoid(1, 2), g.groupoid(2, 2));
    let fs: Vec<GFunctor> = (0..4).map(|_| g.functor(&a, &b)).collect::<Option<_>>()?;
    let top = g.natiso(&fs[0], &fs[1])?;
    let left = g.natiso(&fs[0], &fs[2])?;
    let right = g.natiso(&fs[1], &fs[3])?;
    let bottom = right.after(&top).ok()?.after(&left.inverse()).ok()?;
    let sq = Square {
        top: as_homotopy(cat, &top)?,
        bottom: as_homotopy(cat, &bottom)?,
        left: as_homotopy(cat, &left)?,
        right: as_homotopy(cat, &right)?,
    };
    Some((a, b, sq))
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let cat = Gpd::new(cfg.caps());
    let iv = gpd_interval();
    let mut g = Gen::new(cfg.seed, SUITE, cfg.caps());
    let need = cfg.count(100);

    let mut fill = Tally::new("fill-after-boundary", need);
    let mut k = 0;
    while fill.instances() < need {
        k += 1;
        let (a, b) = (g.groupoid(1, 2), g.groupoid(2, 2));
        let Some(aii) = double_cylinder(&a, cfg) else { continue };
        let Some(phi) = g.functor(&aii, &b) else { continue };
        let res = boundary(&cat, &iv, &a, &phi).and_then(|sq| gpd_fill(&cat, &iv, &sq));
        if matches!(&res, Err(e) if super::over_cap(e)) {
            continue;
        }
        fill.record(res.as_ref().is_ok_and(|f| *f == phi), || {
            Witness::new(cfg, SUITE, "fill-after-boundary", k)
                .groupoid("A", &a)
                .functor("phi", &phi)
                .finish(format!("{:?}", res.err()))
        });
    }

    let mut bound = Tally::new("boundary-after-fill", need);
    let mut k = 0;
    while bound.instances() < need {
        k += 1;
        let Some((a, b, sq)) = commuting_square(&mut g, &cat) else { continue };
        let res = gpd_fill(&cat, &iv, &sq).and_then(|phi| boundary(&cat, &iv, &a, &phi));
        if matches!(&res, Err(e) if super::over_cap(e)) {
            continue;
        }
        bound.record(res.as_ref().is_ok_and(|s| *s == sq), || {
            Witness::new(cfg, SUITE, "boundary-after-fill", k)
                .groupoid("A", &a)
                .groupoid("B", &b)
                .functor("top", &sq.top.body)
                .functor("left", &sq.left.body)
                .functor("right", &sq.right.body)
                .finish(format!("{:?}", res.err()))
        });
    }

    let mut vert = Tally::new("boundary-preserves-vertical-composition", cfg.count(50));
    let mut horiz = Tally::new("boundary-preserves-horizontal-composition", cfg.count(50));
    let mut k = 0;
    while vert.instances() < cfg.count(50) || horiz.instances() < cfg.count(50) {
        k += 1;
        let (a, b) = (g.groupoid(1, 1), g.groupoid(1, 2));
        let Some(aii) = double_cylinder(&a, cfg) else { continue };
        let Ok(cells) = enumerate::functors(&aii, &b, 2000) else { continue };
        let Ok(squares) = cells
            .iter()
            .map(|c| boundary(&cat, &iv, &a, c))
            .collect::<gral_core::Result<Vec<_>>>()
        else {
            continue;
        };
        for _ in 0..10 {
            let u = g.below(cells.len());
            let below: Vec<usize> = (0..cells.len()).filter(|&l| squares[l].top == squares[u].bottom).collect();
            let beside: Vec<usize> = (0..cells.len()).filter(|&l| squares[l].left == squares[u].right).collect();
            if !below.is_empty() {
                let l = *g.pick(&below);
                let res = cell_vertical(&cat, &iv, &a, &cells[l], &cells[u])
                    .and_then(|v| Ok(boundary(&cat, &iv, &a, &v)? == squares[u].stack_vertical(&cat, &iv, &squares[l])?));
                vert.record(matches!(res, Ok(true)), || {
                    Witness::new(cfg, SUITE, "boundary-preserves-vertical-composition", k)
                        .functor("upper", &cells[u])
                        .functor("lower", &cells[l])
                        .finish(format!("{res:?}"))
                });
            }
            if !beside.is_empty() {
                let l = *g.pick(&beside);
                let res = cell_horizontal(&cat, &iv, &a, &cells[l], &cells[u]).and_then(|h| {
                    Ok(boundary(&cat, &iv, &a, &h)? == squares[u].stack_horizontal(&cat, &iv, &squares[l])?)
                });
                horiz.record(matches!(res, Ok(true)), || {
                    Witness::new(cfg, SUITE, "boundary-preserves-horizontal-composition", k)
                        .functor("left", &cells[u])
                        .functor("right", &cells[l])
                        .finish(format!("{res:?}"))
                });
            }
        }
    }

    vec![fill.finish(), bound.finish(), vert.finish(), horiz.finish()]
}
