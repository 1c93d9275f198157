use std::path::Path;

use gral_core::groupoid::{cyclic, walking_iso};
use gral_core::interval::gpd_interval;
use gral_core::Caps;
use gral_harness::format::{groupoid_text, parse_document, read_document, resolve, Document, FormatError};
use gral_harness::gen::Gen;
use proptest::prelude::*;

fn manifest(rel: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

#[test]
fn golden_walking_iso_is_the_interval() {
    let path = manifest("tests/golden/walking_iso.gral");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, groupoid_text("I1", &walking_iso()));
    let r = resolve(&read_document(&path).unwrap(), None).unwrap();
    assert_eq!(*r.groupoids["I1"], *gpd_interval().obj[1]);
}

#[test]
fn parse_serialize_round_trip_on_interval() {
    let iv = gpd_interval();
    let text = groupoid_text("I1", &iv.obj[1]);
    let doc = parse_document(&text, "").unwrap();
    assert_eq!(doc.to_string(), text);
    let again = resolve(&doc, None).unwrap();
    assert_eq!(*again.groupoids["I1"], *iv.obj[1]);
    assert_eq!(Document::from_json(&doc.to_json()).unwrap(), doc);
}

#[test]
fn dangling_ids_are_structural() {
    let src = "gral 1\nGROUPOID G\nOBJECTS\na\nMORPHISMS\nid_a a b\nCOMP\nid_a id_a id_a\nID\na id_a\nINV\nid_a id_a\nEND\n";
    let doc = parse_document(src, "").unwrap();
    let e = resolve(&doc, None).unwrap_err();
    assert!(matches!(e, FormatError::Structural(_)), "{e}");

    let src = "gral 1\nGROUPOID G\nOBJECTS\na\nMORPHISMS\nid_a a a\nCOMP\nid_a id_a id_a\nID\na id_a\nINV\nid_a id_a\nEND\n\
               FUNCTOR F\nDOM G\nCOD G\nOB a a\nMOR id_a nope\nEND\n";
    let e = resolve(&parse_document(src, "").unwrap(), None).unwrap_err();
    assert!(e.to_string().contains("nope"), "{e}");
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let e = parse_document("gral 1\nGROUPOID G\nOBJECTS\na\nMORPHISMS\nid_a a\n", "x.gral").unwrap_err();
    match e {
        FormatError::Syntax { line, col, .. } => assert_eq!((line, col), (6, 6)),
        other => panic!("{other}"),
    }
    let e = parse_document("GROUPOID G\n", "x.gral").unwrap_err();
    assert!(matches!(e, FormatError::Syntax { line: 1, .. }), "{e}");
}

#[test]
fn sample_file_resolves() {
    let path = manifest("examples/data/maps.gral");
    let r = resolve(&read_document(&path).unwrap(), path.parent()).unwrap();
    assert_eq!(r.assemblies.len(), 3);
    assert!(r.functors.values().all(|f| f.dom_asm.is_some() && f.cod_asm.is_some()));
    assert_eq!(r.order.first().map(String::as_str), Some("Z2"));
}

#[test]
fn assemblies_survive_json() {
    let mut g = Gen::new(3, "format", Caps::default());
    for _ in 0..10 {
        let x = g.assembly(2, 2);
        let mut d = Document::new();
        d.push_assembly("X", &x);
        let back = Document::from_json(&d.to_json()).unwrap();
        let r = resolve(&back, None).unwrap();
        let y = &r.assemblies["X"];
        assert_eq!(*y.base, *x.base);
        assert_eq!(y.rfun.omap(), x.rfun.omap());
        assert_eq!(y.rfun.mmap(), x.rfun.mmap());
    }
}

proptest! {
    #[test]
    fn generated_groupoids_round_trip(seed in any::<u64>()) {
        let g = Gen::new(seed, "format", Caps::default()).groupoid(3, 3);
        let text = groupoid_text("G", &g);
        let doc = parse_document(&text, "").unwrap();
        prop_assert_eq!(doc.to_string(), text);
        let r = resolve(&doc, None).unwrap();
        prop_assert_eq!(&*r.groupoids["G"], &*g);
    }

    #[test]
    fn cyclic_groups_round_trip(n in 1usize..8) {
        let g = cyclic(n, "c");
        let r = resolve(&parse_document(&groupoid_text("C", &g), "").unwrap(), None).unwrap();
        prop_assert_eq!(&*r.groupoids["C"], &*g);
    }
}
