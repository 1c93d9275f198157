use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gral"))
        .args(args)
        .env_remove("GRAL_SEED")
        .output()
        .expect("gral runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn manifest(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel).display().to_string()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const Z2_BAD: &str = "gral 1\nGROUPOID Z\nOBJECTS\no\nMORPHISMS\ne o o\ng o o\nCOMP\ne e e\ng e g\ne g g\ng g g\nID\no e\nINV\ne e\ng g\nEND\n";

#[test]
fn check_exit_codes() {
    let ok = gral(&["check", &manifest("tests/golden/walking_iso.gral")]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok), "pass I1\n");

    let bad = scratch("bad_axioms.gral", Z2_BAD);
    let o = gral(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL Z"));

    let dangling = scratch("dangling.gral", &Z2_BAD.replace("INV\ne e\ng g", "INV\ne e\ng h"));
    let o = gral(&["check", dangling.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown morphism h"));

    let syntax = scratch("syntax.gral", "gral 1\nGROUPOID Z\nOBJECTS\no p\n");
    let o = gral(&["check", syntax.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains(":4:3:"));
}

#[test]
fn build_writes_checkable_documents() {
    let input = manifest("examples/data/maps.gral");
    for (kind, names) in [("product", ["X", "E"]), ("pullback", ["F", "G"]), ("pif", ["G", "H"])] {
        let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("{kind}.gral"));
        let o = gral(&["build", kind, names[0], names[1], "--in", &input, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(code(&gral(&["check", out.to_str().unwrap()])), 0);
    }
    let o = gral(&["build", "product", "X", "--in", &input]);
    assert_eq!(code(&o), 2);
    let o = gral(&["build", "pullback", "F", "X", "--in", &input]);
    assert_eq!(code(&o), 2);
}

#[test]
fn fmt_round_trips_through_json() {
    let golden = manifest("tests/golden/walking_iso.gral");
    let json = gral(&["fmt", &golden, "--json"]);
    assert_eq!(code(&json), 0);
    let p = scratch("walking_iso.json", &stdout(&json));
    let back = gral(&["fmt", p.to_str().unwrap()]);
    assert_eq!(stdout(&back), std::fs::read_to_string(&golden).unwrap());
}

#[test]
fn suite_exit_codes_and_seed() {
    let o = gral(&["suite", "cogroupoid"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("pass cogroupoid\n"));

    let o = Command::new(env!("CARGO_BIN_EXE_gral"))
        .args(["suite", "finite-limits"])
        .env("GRAL_SEED", "11")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("suite finite-limits seed 11 "));
    let flag = gral(&["suite", "finite-limits", "--seed", "11"]);
    assert_eq!(stdout(&flag), stdout(&o));

    assert_eq!(code(&gral(&["suite", "nope"])), 2);
}

#[test]
fn injected_fault_fails_and_replays() {
    let o = gral(&["suite", "path-axioms", "--inject-fault", "--json"]);
    assert_eq!(code(&o), 1);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let check = reports[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["status"] == "fail")
        .unwrap();
    assert_eq!(check["name"], "cleavage-split");
    let payload = scratch("payload.json", &check["counterexample"].to_string());
    let again = gral(&["suite", "--replay", payload.to_str().unwrap(), "--json"]);
    assert_eq!(code(&again), 1);
    assert_eq!(stdout(&again), stdout(&o));
}
