//! The interval as a cogroupoid, its axiom checker and path composition.

use std::fmt;

use crate::error::{Error, Result};
use crate::functor::GFunctor;
use crate::groupoid::{chain2, chain3, terminal, walking_iso, Grpd, Obj};
use crate::realizer::{Gpd, RealizerCategory};

/// `𝕀₀ … 𝕀₃` with the nine structure maps.
#[derive(Clone, Debug)]
pub struct IntervalData<C: RealizerCategory> {
    pub obj: [C::Ob; 4],
    /// `0: 𝕀₀ → 𝕀₁`
    pub zero: C::Map,
    /// `1: 𝕀₀ → 𝕀₁`
    pub one: C::Map,
    /// `*: 𝕀₁ → 𝕀₀`
    pub star: C::Map,
    /// `σ: 𝕀₁ → 𝕀₁`
    pub sigma: C::Map,
    /// `2: 𝕀₁ → 𝕀₂`
    pub two: C::Map,
    /// `i₀: 𝕀₁ → 𝕀₂`
    pub in0: C::Map,
    /// `i₁: 𝕀₁ → 𝕀₂`
    pub in1: C::Map,
    /// `j₀: 𝕀₂ → 𝕀₃`
    pub j0: C::Map,
    /// `j₁: 𝕀₂ → 𝕀₃`
    pub j1: C::Map,
}

fn chain_map(dom: &Grpd, cod: &Grpd, objs: &[u32]) -> GFunctor {
    GFunctor::from_fn(
        dom,
        cod,
        |o| Obj(objs[o.idx()]),
        |m| cod.hom(Obj(objs[dom.src(m).idx()]), Obj(objs[dom.tgt(m).idx()]))[0],
    )
}

/// The walking-isomorphism interval in finite groupoids.
pub fn gpd_interval() -> IntervalData<Gpd> {
    let (i0, i1, i2, i3) = (terminal(), walking_iso(), chain2(), chain3());
    IntervalData {
        zero: chain_map(&i0, &i1, &[0]),
        one: chain_map(&i0, &i1, &[1]),
        star: chain_map(&i1, &i0, &[0, 0]),
        sigma: chain_map(&i1, &i1, &[1, 0]),
        two: chain_map(&i1, &i2, &[0, 2]),
        in0: chain_map(&i1, &i2, &[0, 1]),
        in1: chain_map(&i1, &i2, &[1, 2]),
        j0: chain_map(&i2, &i3, &[0, 1, 2]),
        j1: chain_map(&i2, &i3, &[1, 2, 3]),
        obj: [i0, i1, i2, i3],
    }
}

/// The discrete interval: every `𝕀ₖ` is the point.
pub fn degenerate_interval() -> IntervalData<Gpd> {
    let t = terminal();
    let id = GFunctor::identity(&t);
    IntervalData {
        obj: [t.clone(), t.clone(), t.clone(), t],
        zero: id.clone(),
        one: id.clone(),
        star: id.clone(),
        sigma: id.clone(),
        two: id.clone(),
        in0: id.clone(),
        in1: id.clone(),
        j0: id.clone(),
        j1: id,
    }
}

/// Fault fixture: the standard interval with `σ` replaced by the identity.
pub fn mutated_sigma_interval() -> IntervalData<Gpd> {
    let mut iv = gpd_interval();
    iv.sigma = GFunctor::identity(&iv.obj[1]);
    iv
}

/// One diagram of the cogroupoid axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomEntry {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
    /// Discrepancies in the printed diagrams that the checker resolved.
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn failures(&self) -> Vec<&AxiomEntry> {
        self.entries.iter().filter(|e| !e.passed).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let mark = if e.passed { "pass" } else { "FAIL" };
            write!(f, "{mark} {}", e.name)?;
            if !e.detail.is_empty() {
                write!(f, ": {}", e.detail)?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Names of the checks concerning `σ`.
pub const COINVERSE_FAMILY: [&str; 4] = [
    "sigma-endpoints",
    "sigma-involution",
    "coinverse-left",
    "coinverse-right",
];

/// The pushout copair `[β, α]` after checking `β∘0 = α∘1`.
pub fn concat<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    beta: &C::Map,
    alpha: &C::Map,
) -> Result<C::Map> {
    let b0 = cat.compose(beta, &iv.zero)?;
    let a1 = cat.compose(alpha, &iv.one)?;
    if b0 != a1 {
        return Err(Error::Mismatch("paths are not nose-to-tail".into()));
    }
    cat.copair2(iv, beta, alpha)
}

/// `β∘α ≔ [β, α]∘2`.
pub fn path_compose<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    beta: &C::Map,
    alpha: &C::Map,
) -> Result<C::Map> {
    cat.compose(&concat(cat, iv, beta, alpha)?, &iv.two)
}

/// Constant path `a*` at a point.
pub fn constant_path<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    point: &C::Map,
) -> Result<C::Map> {
    cat.compose(point, &iv.star)
}

pub fn reverse_path<C: RealizerCategory>(
    cat: &C,
    iv: &IntervalData<C>,
    alpha: &C::Map,
) -> Result<C::Map> {
    cat.compose(alpha, &iv.sigma)
}

struct Checker<'a, C: RealizerCategory> {
    cat: &'a C,
    report: AxiomReport,
}

impl<C: RealizerCategory> Checker<'_, C> {
    fn equal(&mut self, name: &'static str, lhs: Result<C::Map>, rhs: Result<C::Map>) {
        let entry = match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => AxiomEntry {
                name,
                passed: true,
                detail: String::new(),
            },
            (Ok(l), Ok(r)) => AxiomEntry {
                name,
                passed: false,
                detail: format!("{} ≠ {}", self.cat.label(&l), self.cat.label(&r)),
            },
            (Err(e), _) | (_, Err(e)) => AxiomEntry {
                name,
                passed: false,
                detail: e.to_string(),
            },
        };
        self.push(entry);
    }

    fn push(&mut self, entry: AxiomEntry) {
        match self.report.entries.iter_mut().find(|e| e.name == entry.name) {
            Some(old) if old.passed => *old = entry,
            Some(_) => {}
            None => self.report.entries.push(entry),
        }
    }
}

/// Check all cogroupoid diagrams and both pushouts.
pub fn check_cogroupoid<C: RealizerCategory>(cat: &C, iv: &IntervalData<C>) -> AxiomReport {
    let mut ck = Checker {
        cat,
        report: AxiomReport::default(),
    };
    let c = |g: &C::Map, f: &C::Map| cat.compose(g, f);
    let id0 = cat.identity(&iv.obj[0]);
    let id1 = cat.identity(&iv.obj[1]);

    ck.equal("cocomposition-source", c(&iv.two, &iv.zero), c(&iv.in0, &iv.zero));
    ck.equal("cocomposition-target", c(&iv.two, &iv.one), c(&iv.in1, &iv.one));
    ck.equal("coidentity-endpoints", c(&iv.star, &iv.zero), Ok(id0.clone()));
    ck.equal("coidentity-endpoints", c(&iv.star, &iv.one), Ok(id0));
    ck.equal("sigma-endpoints", c(&iv.sigma, &iv.zero), Ok(iv.one.clone()));
    ck.equal("sigma-endpoints", c(&iv.sigma, &iv.one), Ok(iv.zero.clone()));
    ck.equal("sigma-involution", c(&iv.sigma, &iv.sigma), Ok(id1.clone()));

    let zero_star = c(&iv.zero, &iv.star);
    let one_star = c(&iv.one, &iv.star);
    let via_two = |m: Result<C::Map>| m.and_then(|m| cat.compose(&m, &iv.two));
    ck.equal(
        "coidentity-left",
        via_two(zero_star.clone().and_then(|zs| cat.copair2(iv, &id1, &zs))),
        Ok(id1.clone()),
    );
    ck.equal(
        "coidentity-right",
        via_two(one_star.clone().and_then(|os| cat.copair2(iv, &os, &id1))),
        Ok(id1.clone()),
    );
    let assoc_lhs = (|| {
        let b = c(&iv.j1, &iv.in1)?;
        let a = c(&iv.j0, &iv.two)?;
        c(&cat.copair2(iv, &b, &a)?, &iv.two)
    })();
    let assoc_rhs = (|| {
        let b = c(&iv.j1, &iv.two)?;
        let a = c(&iv.j0, &iv.in0)?;
        c(&cat.copair2(iv, &b, &a)?, &iv.two)
    })();
    ck.equal("coassociativity", assoc_lhs, assoc_rhs);
    ck.equal(
        "coinverse-left",
        via_two(cat.copair2(iv, &id1, &iv.sigma)),
        one_star,
    );
    ck.equal(
        "coinverse-right",
        via_two(cat.copair2(iv, &iv.sigma, &id1)),
        zero_star,
    );
    ck.report.notes.push(
        "coinverse-right is checked with codomain 𝕀₁; the printed diagram names 𝕀₃".into(),
    );

    let p2 = pushout2(cat, iv);
    ck.push(p2);
    let p3 = pushout3(cat, iv);
    ck.push(p3);
    ck.report
}

fn pushout2<C: RealizerCategory>(cat: &C, iv: &IntervalData<C>) -> AxiomEntry {
    let name = "pushout-i2";
    let run = || -> Result<Option<String>> {
        for a in cat.probes() {
            let paths = cat.hom(&iv.obj[1], &a)?;
            let maps = cat.hom(&iv.obj[2], &a)?;
            let restrict: Vec<(C::Map, C::Map)> = maps
                .iter()
                .map(|h| Ok((cat.compose(h, &iv.in0)?, cat.compose(h, &iv.in1)?)))
                .collect::<Result<_>>()?;
            for alpha in &paths {
                let a1 = cat.compose(alpha, &iv.one)?;
                for beta in &paths {
                    if cat.compose(beta, &iv.zero)? != a1 {
                        continue;
                    }
                    let h = cat.copair2(iv, beta, alpha)?;
                    if cat.compose(&h, &iv.in0)? != *alpha || cat.compose(&h, &iv.in1)? != *beta {
                        return Ok(Some(format!(
                            "copair of {} and {} restricts wrongly",
                            cat.label(beta),
                            cat.label(alpha)
                        )));
                    }
                    let fillers = restrict
                        .iter()
                        .filter(|(l, r)| l == alpha && r == beta)
                        .count();
                    if fillers != 1 {
                        return Ok(Some(format!(
                            "{fillers} maps restrict to ({}, {})",
                            cat.label(beta),
                            cat.label(alpha)
                        )));
                    }
                }
            }
        }
        Ok(None)
    };
    outcome(name, run())
}

fn pushout3<C: RealizerCategory>(cat: &C, iv: &IntervalData<C>) -> AxiomEntry {
    let name = "pushout-i3";
    let run = || -> Result<Option<String>> {
        if cat.compose(&iv.j0, &iv.in1)? != cat.compose(&iv.j1, &iv.in0)? {
            return Ok(Some("j₀∘i₁ ≠ j₁∘i₀".into()));
        }
        for a in cat.probes() {
            let twos = cat.hom(&iv.obj[2], &a)?;
            let maps = cat.hom(&iv.obj[3], &a)?;
            let restrict: Vec<(C::Map, C::Map)> = maps
                .iter()
                .map(|h| Ok((cat.compose(h, &iv.j1)?, cat.compose(h, &iv.j0)?)))
                .collect::<Result<_>>()?;
            for cm in &twos {
                let c0 = cat.compose(cm, &iv.in0)?;
                for d in &twos {
                    if cat.compose(d, &iv.in1)? != c0 {
                        continue;
                    }
                    let h = cat.copair3(iv, cm, d)?;
                    if cat.compose(&h, &iv.j1)? != *cm || cat.compose(&h, &iv.j0)? != *d {
                        return Ok(Some("copair restricts wrongly".into()));
                    }
                    let fillers = restrict.iter().filter(|(l, r)| l == cm && r == d).count();
                    if fillers != 1 {
                        return Ok(Some(format!("{fillers} maps restrict to the same pair")));
                    }
                }
            }
        }
        Ok(None)
    };
    outcome(name, run())
}

fn outcome(name: &'static str, r: Result<Option<String>>) -> AxiomEntry {
    match r {
        Ok(None) => AxiomEntry {
            name,
            passed: true,
            detail: String::new(),
        },
        Ok(Some(d)) => AxiomEntry {
            name,
            passed: false,
            detail: d,
        },
        Err(e) => AxiomEntry {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_maps() {
        let iv = gpd_interval();
        let i1 = &iv.obj[1];
        let i2 = &iv.obj[2];
        let i3 = &iv.obj[3];
        let i = i1.morphism_by_id("i").unwrap();
        assert_eq!(i2.morphism_id(iv.two.mor(i)), "i1i0");
        assert_eq!(i1.morphism_id(iv.sigma.mor(i)), "i^-1");
        let a = i2.morphism_by_id("i0").unwrap();
        let b = i2.morphism_by_id("i1").unwrap();
        assert_eq!(i3.morphism_id(iv.j1.mor(a)), "i1");
        assert_eq!(i3.morphism_id(iv.j1.mor(b)), "i2");
        for m in [&iv.zero, &iv.one, &iv.star, &iv.sigma, &iv.two, &iv.in0, &iv.in1, &iv.j0, &iv.j1] {
            assert!(m.is_valid());
        }
    }

    #[test]
    fn standard_interval_passes() {
        let r = check_cogroupoid(&Gpd::default(), &gpd_interval());
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.entries.len(), 12);
    }

    #[test]
    fn degenerate_interval_passes() {
        let r = check_cogroupoid(&Gpd::default(), &degenerate_interval());
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn mutated_sigma_fails_in_coinverse_family() {
        let r = check_cogroupoid(&Gpd::default(), &mutated_sigma_interval());
        let failed: Vec<&str> = r.failures().iter().map(|e| e.name).collect();
        assert!(failed.contains(&"coinverse-left"));
        assert!(failed.contains(&"coinverse-right"));
        assert!(failed.iter().all(|n| COINVERSE_FAMILY.contains(n)), "{failed:?}");
    }

    #[test]
    fn path_compose_is_groupoid_composition() {
        let cat = Gpd::default();
        let iv = gpd_interval();
        let a = crate::groupoid::cyclic(3, "o");
        let paths = cat.hom(&iv.obj[1], &a).unwrap();
        let i = iv.obj[1].morphism_by_id("i").unwrap();
        for alpha in &paths {
            for beta in &paths {
                let ba = path_compose(&cat, &iv, beta, alpha).unwrap();
                assert_eq!(ba.mor(i), a.compose(beta.mor(i), alpha.mor(i)));
            }
        }
    }
}
