//! Π(A) for a small groupoid, the isomorphism A ≅ Π(A) and path algebra.

use gral_core::fundamental::{fundamental, gpd_pi_iso, morphism_path};
use gral_core::groupoid::{codiscrete, disjoint_union, cyclic};
use gral_core::interval::{gpd_interval, path_compose, reverse_path};
use gral_core::Gpd;

fn main() -> gral_core::Result<()> {
    let cat = Gpd::default();
    let iv = gpd_interval();
    let a = disjoint_union(&[cyclic(3, "r"), codiscrete(&["p".into(), "q".into()])]);
    let pi = fundamental(&cat, &iv, &a)?;
    println!(
        "A: {} objects, {} morphisms; Π(A): {} points, {} paths",
        a.object_count(),
        a.morphism_count(),
        pi.grpd.object_count(),
        pi.grpd.morphism_count()
    );

    let (to, from) = gpd_pi_iso(&pi)?;
    println!("A → Π(A) → A is the identity: {}", from.after(&to)? == gral_core::GFunctor::identity(&a));

    let m = a.morphisms().find(|&m| !a.is_identity(m) && a.src(m) == a.tgt(m)).unwrap();
    let alpha = morphism_path(&a, m);
    let twice = path_compose(&cat, &iv, &alpha, &alpha)?;
    let back = path_compose(&cat, &iv, &reverse_path(&cat, &iv, &alpha)?, &alpha)?;
    println!(
        "{} ∘ {} = {}; reversed then composed: {}",
        a.morphism_id(m),
        a.morphism_id(m),
        a.morphism_id(pi.path_of(&twice).map(|p| from.mor(p)).unwrap()),
        a.morphism_id(pi.path_of(&back).map(|p| from.mor(p)).unwrap()),
    );
    Ok(())
}
